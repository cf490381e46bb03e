#include "cdef/exactcore.hpp"

#include <algorithm>
#include <set>

namespace cdef {

std::string format_rational(const Rational& q) {
	if (q.get_den() == 1) return q.get_num().get_str();
	return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational make_rational(long num, long den) {
	if (den == 0) throw Error("make_rational: zero denominator");
	Rational q(num, den);
	q.canonicalize();
	return q;
}

Rational parse_rational(const std::string& s) {
	auto slash = s.find('/');
	auto valid_int = [](const std::string& t) {
		if (t.empty()) return false;
		std::size_t k = (t[0] == '-' || t[0] == '+') ? 1 : 0;
		if (k == t.size()) return false;
		return std::all_of(t.begin() + k, t.end(), [](char c) { return c >= '0' && c <= '9'; });
	};
	std::string num = s.substr(0, slash);
	std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
	if (!num.empty() && num[0] == '+') num.erase(0, 1);
	if (!valid_int(num) || !valid_int(den) || den[0] == '-')
		throw ParseError("not a rational: \"" + s + "\"");
	Rational q{mpz_class(num), mpz_class(den)};
	if (q.get_den() == 0) throw ParseError("zero denominator: \"" + s + "\"");
	q.canonicalize();
	return q;
}

GradedSpace::GradedSpace(std::vector<std::pair<std::string, int>> basis) {
	for (auto& [n, d] : basis) {
		if (index_.count(n)) throw Error("duplicate basis name \"" + n + "\"");
		index_[n] = static_cast<int>(names_.size());
		names_.push_back(n);
		degrees_.push_back(d);
	}
}

std::optional<int> GradedSpace::find(const std::string& name) const {
	auto it = index_.find(name);
	if (it == index_.end()) return std::nullopt;
	return it->second;
}

int GradedSpace::index(const std::string& name) const {
	auto i = find(name);
	if (!i) throw Error("unknown basis name \"" + name + "\"");
	return *i;
}

GradedSpace GradedSpace::shifted(int k) const {
	std::vector<std::pair<std::string, int>> b;
	for (std::size_t i = 0; i < names_.size(); ++i) b.emplace_back(names_[i], degrees_[i] + k);
	return GradedSpace(std::move(b));
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
	if (a == b) return true;
	if (!a || !b) return false;
	return *a == *b;
}

void add_to(Coords& v, int i, const Rational& c) {
	if (c == 0) return;
	auto [it, fresh] = v.try_emplace(i, c);
	if (!fresh) {
		it->second += c;
		if (it->second == 0) v.erase(it);
	}
}

void add_to(Coords& v, const Coords& w, const Rational& c) {
	if (c == 0) return;
	for (auto& [i, x] : w) add_to(v, i, x * c);
}

bool is_zero(const Coords& v) { return v.empty(); }

Vector Vector::basis(SpacePtr space, int i) {
	Vector v{std::move(space), {}};
	v.coords[i] = 1;
	return v;
}

Vector& Vector::operator+=(const Vector& o) {
	if (!space) space = o.space;
	add_to(coords, o.coords);
	return *this;
}

Vector Vector::operator+(const Vector& o) const {
	Vector r = *this;
	r += o;
	return r;
}

Vector Vector::operator*(const Rational& c) const {
	Vector r{space, {}};
	add_to(r.coords, coords, c);
	return r;
}

int koszul_sign(const std::vector<int>& perm, const std::vector<int>& degrees) {
	if (perm.size() != degrees.size())
		throw Error("koszul_sign: permutation and degree list differ in length");
	const int n = static_cast<int>(perm.size());
	std::vector<bool> seen(n, false);
	for (int p : perm) {
		if (p < 1 || p > n || seen[p - 1]) throw Error("koszul_sign: not a permutation");
		seen[p - 1] = true;
	}
	int parity = 0;
	for (int i = 0; i < n; ++i)
		for (int j = i + 1; j < n; ++j)
			if (perm[i] > perm[j]) parity ^= (degrees[i] & 1) & (degrees[j] & 1);
	return parity ? -1 : 1;
}

const char* to_string(Orientation o) { return o == Orientation::algebra ? "algebra" : "coalgebra"; }

Orientation parse_orientation(const std::string& s) {
	if (s == "algebra") return Orientation::algebra;
	if (s == "coalgebra") return Orientation::coalgebra;
	throw ParseError("unknown orientation \"" + s + "\"");
}

MultilinearMap::MultilinearMap(SpacePtr space, int arity, int degree, Orientation o)
	: space_(std::move(space)), arity_(arity), degree_(degree), orientation_(o) {
	if (arity < 1) throw Error("multilinear map arity must be at least 1");
	if (!space_) throw Error("multilinear map without a space");
}

MultilinearMap MultilinearMap::identity(SpacePtr space, Orientation o) {
	MultilinearMap id(space, 1, 0, o);
	for (int i = 0; i < static_cast<int>(space->dim()); ++i) id.add({i}, i, 1);
	return id;
}

int MultilinearMap::single_degree(const Tuple& t) const {
	int s = 0;
	for (int i : t) s += space_->degree(i);
	return orientation_ == Orientation::algebra ? s + degree_ : s - degree_;
}

bool MultilinearMap::admissible(const Tuple& t, int single) const {
	return static_cast<int>(t.size()) == arity_ && space_->degree(single) == single_degree(t);
}

void MultilinearMap::add(const Tuple& t, int single, const Rational& c) {
	if (c == 0) return;
	if (static_cast<int>(t.size()) != arity_) throw Error("entry tuple has wrong arity");
	if (!admissible(t, single)) throw Error("entry violates the degree constraint");
	auto& v = entries_[t];
	add_to(v, single, c);
	if (v.empty()) entries_.erase(t);
}

void MultilinearMap::add(const Tuple& t, const Coords& v, const Rational& c) {
	for (auto& [j, x] : v) add(t, j, x * c);
}

Rational MultilinearMap::coeff(const Tuple& t, int single) const {
	auto it = entries_.find(t);
	if (it == entries_.end()) return 0;
	auto jt = it->second.find(single);
	return jt == it->second.end() ? Rational(0) : jt->second;
}

std::size_t MultilinearMap::size() const {
	std::size_t n = 0;
	for (auto& [t, v] : entries_) n += v.size();
	return n;
}

void MultilinearMap::check_compatible(const MultilinearMap& o) const {
	if (o.arity_ != arity_ || o.orientation_ != orientation_ || !same_space(space_, o.space_))
		throw Error("incompatible multilinear maps");
	if (o.degree_ != degree_ && !o.is_zero() && !is_zero())
		throw Error("adding multilinear maps of different degree");
}

MultilinearMap& MultilinearMap::operator+=(const MultilinearMap& o) {
	check_compatible(o);
	if (is_zero()) degree_ = o.degree_;
	for (auto& [t, v] : o.entries_) {
		auto& w = entries_[t];
		add_to(w, v);
		if (w.empty()) entries_.erase(t);
	}
	return *this;
}

MultilinearMap& MultilinearMap::operator-=(const MultilinearMap& o) { return *this += -o; }

MultilinearMap& MultilinearMap::operator*=(const Rational& c) {
	if (c == 0) {
		entries_.clear();
		return *this;
	}
	for (auto& [t, v] : entries_)
		for (auto& [j, x] : v) x *= c;
	return *this;
}

MultilinearMap MultilinearMap::operator+(const MultilinearMap& o) const {
	MultilinearMap r = *this;
	r += o;
	return r;
}

MultilinearMap MultilinearMap::operator-(const MultilinearMap& o) const {
	MultilinearMap r = *this;
	r -= o;
	return r;
}

MultilinearMap MultilinearMap::operator-() const { return *this * Rational(-1); }

MultilinearMap MultilinearMap::operator*(const Rational& c) const {
	MultilinearMap r = *this;
	r *= c;
	return r;
}

bool MultilinearMap::operator==(const MultilinearMap& o) const {
	if (arity_ != o.arity_ || orientation_ != o.orientation_) return false;
	if (entries_ != o.entries_) return false;
	return is_zero() || degree_ == o.degree_;
}

std::vector<Tuple> MultilinearMap::all_tuples(std::size_t dim, int n) {
	std::vector<Tuple> out;
	if (dim == 0) return out;
	Tuple t(n, 0);
	while (true) {
		out.push_back(t);
		int k = n - 1;
		while (k >= 0 && t[k] == static_cast<int>(dim) - 1) t[k--] = 0;
		if (k < 0) break;
		++t[k];
	}
	return out;
}

MultilinearMap compose_at(const MultilinearMap& f, const MultilinearMap& g, int i) {
	if (i < 1 || i > f.arity()) throw Error("compose_at: slot out of range");
	if (!same_space(f.space(), g.space()) || f.orientation() != g.orientation())
		throw Error("compose_at: space or orientation mismatch");
	const int p = f.arity(), q = g.arity();
	const auto& space = *f.space();
	MultilinearMap r(f.space(), p + q - 1, f.degree() + g.degree(), f.orientation());
	if (f.is_zero() || g.is_zero()) return r;

	// g entries grouped by the basis element they produce.
	std::map<int, std::vector<std::pair<const Tuple*, Rational>>> by_single;
	for (auto& [t, v] : g.entries())
		for (auto& [j, c] : v) by_single[j].emplace_back(&t, c);

	const bool odd_g = g.degree() & 1;
	Tuple tuple(p + q - 1);
	for (auto& [ft, fv] : f.entries()) {
		auto it = by_single.find(ft[i - 1]);
		if (it == by_single.end()) continue;
		int prefix = 0;
		for (int k = 0; k < i - 1; ++k) prefix += space.degree(ft[k]);
		const int sign = (odd_g && (prefix & 1)) ? -1 : 1;
		std::copy(ft.begin(), ft.begin() + (i - 1), tuple.begin());
		std::copy(ft.begin() + i, ft.end(), tuple.begin() + (i - 1 + q));
		for (auto& [gt, c] : it->second) {
			std::copy(gt->begin(), gt->end(), tuple.begin() + (i - 1));
			r.add(tuple, fv, c * sign);
		}
	}
	return r;
}

Vector apply(const MultilinearMap& f, const std::vector<Vector>& args) {
	if (f.orientation() != Orientation::algebra) throw Error("apply: coalgebra-oriented map");
	if (static_cast<int>(args.size()) != f.arity()) throw Error("apply: arity mismatch");
	Vector out{f.space(), {}};
	for (auto& [t, v] : f.entries()) {
		Rational c = 1;
		for (int k = 0; k < f.arity() && c != 0; ++k) {
			auto it = args[k].coords.find(t[k]);
			c = (it == args[k].coords.end()) ? Rational(0) : c * it->second;
		}
		if (c != 0) add_to(out.coords, v, c);
	}
	return out;
}

std::map<Tuple, Rational> coapply(const MultilinearMap& f, const Vector& v) {
	if (f.orientation() != Orientation::coalgebra) throw Error("coapply: algebra-oriented map");
	std::map<Tuple, Rational> out;
	for (auto& [t, w] : f.entries()) {
		Rational c = 0;
		for (auto& [j, x] : w) {
			auto it = v.coords.find(j);
			if (it != v.coords.end()) c += x * it->second;
		}
		if (c != 0) out[t] = c;
	}
	return out;
}

std::ostream& operator<<(std::ostream& os, const MultilinearMap& f) {
	os << "map(arity " << f.arity() << ", degree " << f.degree() << ", " << to_string(f.orientation()) << ")";
	for (auto& [t, v] : f.entries()) {
		os << "\n  (";
		for (std::size_t k = 0; k < t.size(); ++k) os << (k ? "," : "") << f.space()->name(t[k]);
		os << ") ->";
		for (auto& [j, c] : v) os << " " << format_rational(c) << " " << f.space()->name(j);
	}
	return os;
}

} // namespace cdef
