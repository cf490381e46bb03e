#include "cdef/words.hpp"

#include "cdef/linalg.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>

namespace cdef {

Perm identity_perm(int n) {
	Perm p(n);
	std::iota(p.begin(), p.end(), 1);
	return p;
}

Perm compose(const Perm& a, const Perm& b) {
	if (a.size() != b.size()) throw Error("compose: permutations of different size");
	Perm r(a.size());
	for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[b[i] - 1];
	return r;
}

Perm inverse(const Perm& p) {
	Perm r(p.size());
	for (std::size_t i = 0; i < p.size(); ++i) r[p[i] - 1] = static_cast<int>(i) + 1;
	return r;
}

int sign(const Perm& p) {
	int inv = 0;
	for (std::size_t i = 0; i < p.size(); ++i)
		for (std::size_t j = i + 1; j < p.size(); ++j)
			if (p[i] > p[j]) ++inv;
	return (inv & 1) ? -1 : 1;
}

std::vector<Perm> all_perms(int n) {
	std::vector<Perm> out;
	Perm p = identity_perm(n);
	do out.push_back(p);
	while (std::next_permutation(p.begin(), p.end()));
	return out;
}

std::string format_perm(const Perm& p) {
	std::string s = "[";
	for (std::size_t i = 0; i < p.size(); ++i) {
		if (i) s += ",";
		s += std::to_string(p[i]);
	}
	return s + "]";
}

std::string format_cycles(const Perm& p) {
	std::string s;
	std::vector<bool> seen(p.size() + 1, false);
	for (int i = 1; i <= static_cast<int>(p.size()); ++i) {
		if (seen[i] || p[i - 1] == i) continue;
		s += "(";
		for (int j = i; !seen[j]; j = p[j - 1]) {
			seen[j] = true;
			s += (j == i ? "" : " ") + std::to_string(j);
		}
		s += ")";
	}
	return s.empty() ? "()" : s;
}

GroupAlgebraElement GroupAlgebraElement::unit(int n) { return of(identity_perm(n)); }

GroupAlgebraElement GroupAlgebraElement::of(const Perm& p, const Rational& c) {
	GroupAlgebraElement a(static_cast<int>(p.size()));
	a.add(p, c);
	return a;
}

Rational GroupAlgebraElement::coeff(const Perm& p) const {
	auto it = terms_.find(p);
	return it == terms_.end() ? Rational(0) : it->second;
}

void GroupAlgebraElement::add(const Perm& p, const Rational& c) {
	if (static_cast<int>(p.size()) != n_) throw Error("permutation of the wrong size");
	if (c == 0) return;
	auto [it, fresh] = terms_.try_emplace(p, c);
	if (!fresh) {
		it->second += c;
		if (it->second == 0) terms_.erase(it);
	}
}

GroupAlgebraElement& GroupAlgebraElement::operator+=(const GroupAlgebraElement& o) {
	if (o.n_ != n_) throw Error("adding group algebra elements of different arity");
	for (auto& [p, c] : o.terms_) add(p, c);
	return *this;
}

GroupAlgebraElement GroupAlgebraElement::operator+(const GroupAlgebraElement& o) const {
	auto r = *this;
	r += o;
	return r;
}

GroupAlgebraElement GroupAlgebraElement::operator-(const GroupAlgebraElement& o) const {
	return *this + o * Rational(-1);
}

GroupAlgebraElement GroupAlgebraElement::operator*(const Rational& c) const {
	GroupAlgebraElement r(n_);
	if (c == 0) return r;
	for (auto& [p, x] : terms_) r.terms_.emplace(p, x * c);
	return r;
}

GroupAlgebraElement GroupAlgebraElement::operator*(const GroupAlgebraElement& o) const {
	if (o.n_ != n_) throw Error("multiplying group algebra elements of different arity");
	GroupAlgebraElement r(n_);
	for (auto& [p, x] : terms_)
		for (auto& [q, y] : o.terms_) r.add(compose(p, q), x * y);
	return r;
}

GroupAlgebraElement operator*(const Rational& c, const GroupAlgebraElement& a) { return a * c; }

namespace {

// All (p,q)-shuffles, as permutations of {1..p+q}.
std::vector<Perm> shuffles(int p, int q) {
	std::vector<Perm> out;
	const int n = p + q;
	// enumerate p-subsets S in lexicographic order of their indicator
	std::vector<bool> mask(n, false);
	std::fill(mask.end() - p, mask.end(), true);
	do {
		Perm z(n);
		int a = 0, b = p;
		for (int k = 0; k < n; ++k) {
			if (mask[k]) z[a++] = k + 1;
			else z[b++] = k + 1;
		}
		out.push_back(z);
	} while (std::next_permutation(mask.begin(), mask.end()));
	std::sort(out.begin(), out.end());
	return out;
}

} // namespace

GroupAlgebraElement shuffle_sum(int p, int q) {
	if (p < 1 || q < 1) throw Error("shuffle_sum: p and q must be at least 1");
	GroupAlgebraElement r(p + q);
	for (auto& z : shuffles(p, q)) r.add(z, 1);
	return r;
}

GroupAlgebraElement convolve(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
	const int p = a.n(), q = b.n();
	GroupAlgebraElement r(p + q);
	const auto zs = shuffles(p, q);
	Perm juxt(p + q);
	for (auto& [s, x] : a.terms()) {
		for (auto& [t, y] : b.terms()) {
			for (int i = 0; i < p; ++i) juxt[i] = s[i];
			for (int j = 0; j < q; ++j) juxt[p + j] = p + t[j];
			const Rational c = x * y;
			for (auto& z : zs) r.add(compose(z, juxt), c);
		}
	}
	return r;
}

namespace {

// Graded family indexed by arity 1..n (index 0 unused).
using Family = std::vector<GroupAlgebraElement>;

Family convolve_family(const Family& a, const Family& b, int n) {
	Family r(n + 1);
	for (int m = 0; m <= n; ++m) r[m] = GroupAlgebraElement(m);
	for (int p = 1; p < n; ++p)
		for (int q = 1; p + q <= n; ++q)
			if (!a[p].is_zero() && !b[q].is_zero()) r[p + q] += convolve(a[p], b[q]);
	return r;
}

} // namespace

std::vector<GroupAlgebraElement> eulerian_idempotents(int n, int max_n) {
	if (n < 1 || n > max_n) throw Error("eulerian_idempotents: n out of range");
	// J = identity minus its arity-0 part; log(id) = sum (-1)^{k+1} J^k / k.
	Family J(n + 1);
	for (int m = 0; m <= n; ++m) J[m] = m == 0 ? GroupAlgebraElement(0) : GroupAlgebraElement::unit(m);
	Family e1(n + 1);
	for (int m = 0; m <= n; ++m) e1[m] = GroupAlgebraElement(m);
	Family power = J;
	for (int k = 1; k <= n; ++k) {
		const Rational c = make_rational((k & 1) ? 1 : -1, k);
		for (int m = 1; m <= n; ++m) e1[m] += power[m] * c;
		if (k < n) power = convolve_family(power, J, n);
	}
	std::vector<GroupAlgebraElement> out;
	Family epower = e1;
	Rational factorial = 1;
	for (int k = 1; k <= n; ++k) {
		factorial *= k;
		out.push_back(epower[n] * (1 / factorial));
		if (k < n) epower = convolve_family(epower, e1, n);
	}
	return out;
}

std::size_t right_multiplication_rank(const GroupAlgebraElement& a) {
	const auto perms = all_perms(a.n());
	std::map<Perm, int> index;
	for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
	ColumnEliminator e;
	for (auto& s : perms) {
		SparseVec v;
		for (auto& [p, c] : a.terms()) v[index[compose(s, p)]] = c;
		e.add_column(v);
	}
	return e.rank();
}

std::string BracketTree::str() const {
	if (letter) return std::to_string(letter);
	return "[" + left->str() + "," + right->str() + "]";
}

GroupAlgebraElement BracketTree::expand(int n) const {
	// words of the sub-bracket, kept as sequences of letters
	std::function<std::map<std::vector<int>, Rational>(const BracketTree&)> rec =
		[&](const BracketTree& t) -> std::map<std::vector<int>, Rational> {
		if (t.letter) return {{{t.letter}, Rational(1)}};
		auto l = rec(*t.left), r = rec(*t.right);
		std::map<std::vector<int>, Rational> out;
		for (auto& [u, x] : l)
			for (auto& [v, y] : r) {
				auto uv = u;
				uv.insert(uv.end(), v.begin(), v.end());
				auto vu = v;
				vu.insert(vu.end(), u.begin(), u.end());
				out[uv] += x * y;
				out[vu] -= x * y;
			}
		return out;
	};
	GroupAlgebraElement r(n);
	for (auto& [w, c] : rec(*this)) r.add(w, c);
	return r;
}

namespace {

std::shared_ptr<const BracketTree> standard_bracketing(const std::vector<int>& w) {
	auto node = std::make_shared<BracketTree>();
	if (w.size() == 1) {
		node->letter = w[0];
		return node;
	}
	// longest proper suffix that is Lyndon; with distinct letters that is the
	// suffix starting at the smallest letter after position 0
	std::size_t best = 1;
	for (std::size_t k = 1; k < w.size(); ++k)
		if (w[k] < w[best]) best = k;
	node->left = standard_bracketing({w.begin(), w.begin() + best});
	node->right = standard_bracketing({w.begin() + best, w.end()});
	return node;
}

} // namespace

LyndonBasis lyndon_basis(int n) {
	if (n < 1) throw Error("lyndon_basis: n must be positive");
	LyndonBasis b;
	b.n = n;
	// multilinear Lyndon words are exactly the arrangements starting with 1
	Perm tail(n - 1);
	std::iota(tail.begin(), tail.end(), 2);
	do {
		std::vector<int> w{1};
		w.insert(w.end(), tail.begin(), tail.end());
		b.words.push_back(w);
		b.brackets.push_back(standard_bracketing(w));
	} while (std::next_permutation(tail.begin(), tail.end()));
	return b;
}

MultilinearMap act_on_inputs(const GroupAlgebraElement& a, const MultilinearMap& f) {
	const int n = f.arity();
	if (a.n() != n) throw Error("act_on_inputs: arity mismatch");
	MultilinearMap r(f.space(), n, f.degree(), f.orientation());
	const auto& space = *f.space();
	Tuple t(n);
	std::vector<int> degs(n);
	for (auto& [sigma, c] : a.terms()) {
		const Perm sinv = inverse(sigma);
		for (auto& [u, v] : f.entries()) {
			// t_k = u_{sigma^{-1}(k)}, so that t o sigma = u
			for (int k = 0; k < n; ++k) t[k] = u[sinv[k] - 1];
			for (int k = 0; k < n; ++k) degs[k] = space.degree(t[k]);
			// factor j of e_t moves to position sigma^{-1}(j)
			const int eps = koszul_sign(sinv, degs);
			r.add(t, v, c * eps);
		}
	}
	return r;
}

GroupAlgebraElement transpose(const GroupAlgebraElement& a) {
	GroupAlgebraElement r(a.n());
	for (auto& [p, c] : a.terms()) r.add(inverse(p), c);
	return r;
}

MultilinearMap on_shuffle_products(const MultilinearMap& f, int p) {
	const int n = f.arity();
	if (p < 1 || p >= n) throw Error("on_shuffle_products: need 1 <= p < arity");
	// the word of a shuffle z carries x_{z^{-1}(j)} at position j
	return act_on_inputs(transpose(shuffle_sum(p, n - p)), f);
}

const GroupAlgebraElement& harrison_projector(int n) {
	static std::mutex mu;
	static std::map<int, GroupAlgebraElement> cache;
	std::lock_guard<std::mutex> lock(mu);
	auto it = cache.find(n);
	if (it == cache.end()) it = cache.emplace(n, transpose(eulerian_idempotents(n)[0])).first;
	return it->second;
}

MultilinearMap harrison_projection(const MultilinearMap& f) {
	if (f.arity() < 2) return f;
	return act_on_inputs(harrison_projector(f.arity()), f);
}

std::ostream& operator<<(std::ostream& os, const GroupAlgebraElement& a) {
	if (a.is_zero()) return os << "0";
	bool first = true;
	for (auto& [p, c] : a.terms()) {
		os << (first ? "" : " + ") << format_rational(c) << " " << format_perm(p);
		first = false;
	}
	return os;
}

} // namespace cdef
