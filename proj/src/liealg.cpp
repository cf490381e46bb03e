#include "cdef/liealg.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace cdef {

namespace {

bool odd(int d) { return (d & 1) != 0; }
int sgn(bool negative) { return negative ? -1 : 1; }

const Coords kEmpty;

SparseVec scaled(const SparseVec& v, const Rational& c) {
	SparseVec out;
	if (c == 0) return out;
	for (auto& [i, q] : v) out[i] = q * c;
	return out;
}

// Stable sort of a word by letter index with the Koszul sign of the
// rearrangement; letters carry the given degrees.
std::pair<int, Word> sort_with_sign(const Word& w, const std::vector<int>& deg) {
	Word s = w;
	int sign = 1;
	for (std::size_t i = 1; i < s.size(); ++i)
		for (std::size_t j = i; j > 0 && s[j - 1] > s[j]; --j) {
			if (odd(deg[s[j - 1]]) && odd(deg[s[j]])) sign = -sign;
			std::swap(s[j - 1], s[j]);
		}
	return {sign, s};
}

// Sorted word with an odd letter repeated: zero in a graded-symmetric algebra.
bool repeats_odd(const Word& sorted, const std::vector<int>& deg) {
	for (std::size_t i = 1; i < sorted.size(); ++i)
		if (sorted[i] == sorted[i - 1] && odd(deg[sorted[i]])) return true;
	return false;
}

int word_sum(const Word& w, const std::vector<int>& per_letter) {
	int s = 0;
	for (int a : w) s += per_letter[a];
	return s;
}

// All words (ordered or nondecreasing) of positive length and weight <= W.
void enumerate_words(const std::vector<int>& weight, int W, bool sorted, bool allow_empty,
                     const std::function<bool(const Word&)>& keep, std::vector<Word>& out) {
	const int n = static_cast<int>(weight.size());
	std::function<void(Word&, int, int)> rec = [&](Word& w, int wt, int start) {
		if (!w.empty() || allow_empty)
			if (keep(w)) out.push_back(w);
		for (int a = sorted ? start : 0; a < n; ++a) {
			if (weight[a] < 1) throw LieError("letters must have positive weight");
			if (wt + weight[a] > W) continue;
			w.push_back(a);
			rec(w, wt + weight[a], a);
			w.pop_back();
		}
	};
	Word w;
	rec(w, 0, 0);
	// shorter words first, then lexicographic: stable names and indices
	std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
		if (a.size() != b.size()) return a.size() < b.size();
		return a < b;
	});
}

std::string join_names(const Word& w, const std::vector<std::string>& names, const std::string& sep) {
	std::string s;
	for (std::size_t i = 0; i < w.size(); ++i) s += (i ? sep : "") + names[w[i]];
	return s;
}

} // namespace

// ---------------------------------------------------------------- FiniteDgLie

const Coords& FiniteDgLie::bracket(int i, int j) const {
	auto it = table_.find({i, j});
	return it == table_.end() ? kEmpty : it->second;
}

Coords FiniteDgLie::bracket(const Coords& a, const Coords& b) const {
	Coords out;
	for (auto& [i, p] : a)
		for (auto& [j, q] : b) add_to(out, bracket(i, j), p * q);
	return out;
}

const Coords& FiniteDgLie::diff(int i) const { return dtable_.at(i); }

Coords FiniteDgLie::diff(const Coords& a) const {
	Coords out;
	for (auto& [i, p] : a) add_to(out, dtable_[i], p);
	return out;
}

ChainComplex FiniteDgLie::complex() const {
	ChainComplex c;
	for (std::size_t i = 0; i < dim(); ++i) {
		c.names.push_back(space_->name(static_cast<int>(i)));
		c.degree.push_back(degree(static_cast<int>(i)));
		c.weight.push_back(weights_[i]);
		c.d.push_back(dtable_[i]);
	}
	return c;
}

namespace {

std::optional<std::string> weight_defect(const FiniteDgLie& g, const std::vector<int>& w) {
	const auto& V = *g.space();
	for (std::size_t i = 0; i < w.size(); ++i) {
		if (w[i] < 1) return "weight of " + V.name(static_cast<int>(i)) + " is not positive";
		for (auto& [k, q] : g.diff(static_cast<int>(i)))
			if (w[k] != w[i]) return "d(" + V.name(static_cast<int>(i)) + ") changes weight";
	}
	for (std::size_t i = 0; i < w.size(); ++i)
		for (std::size_t j = 0; j < w.size(); ++j)
			for (auto& [k, q] : g.bracket(static_cast<int>(i), static_cast<int>(j)))
				if (w[k] != w[i] + w[j])
					return "[" + V.name(static_cast<int>(i)) + "," + V.name(static_cast<int>(j)) + "] is not of weight " +
					       std::to_string(w[i] + w[j]);
	return std::nullopt;
}

} // namespace

FiniteDgLie FiniteDgLie::make(SpacePtr space, MultilinearMap bracket, std::optional<MultilinearMap> d,
                              std::optional<std::vector<int>> weights) {
	if (!same_space(bracket.space(), space) || bracket.arity() != 2 || bracket.degree() != 0 ||
	    bracket.orientation() != Orientation::algebra)
		throw LieError("bracket must be a binary degree-0 map on the space");
	FiniteDgLie g;
	g.space_ = space;
	g.bracket_ = std::move(bracket);
	g.d_ = d ? std::move(*d) : MultilinearMap(space, 1, -1);
	if (!same_space(g.d_.space(), space) || g.d_.arity() != 1 || g.d_.degree() != -1)
		throw LieError("differential must be a unary degree -1 map on the space");
	const int n = static_cast<int>(space->dim());
	for (auto& [t, c] : g.bracket_.entries()) g.table_[{t[0], t[1]}] = c;
	g.dtable_.assign(n, Coords{});
	for (auto& [t, c] : g.d_.entries()) g.dtable_[t[0]] = c;
	const auto& V = *space;
	auto name = [&](int i) { return V.name(i); };
	auto basis = [](int i) { return Coords{{i, Rational(1)}}; };

	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j) {
			Coords s = g.bracket(i, j);
			add_to(s, g.bracket(j, i), sgn(odd(V.degree(i)) && odd(V.degree(j))));
			if (!is_zero(s)) throw LieError("antisymmetry fails for (" + name(i) + ", " + name(j) + ")");
		}
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			for (int k = 0; k < n; ++k) {
				Coords lhs = g.bracket(basis(i), g.bracket(j, k));
				add_to(lhs, g.bracket(g.bracket(i, j), basis(k)), -1);
				add_to(lhs, g.bracket(basis(j), g.bracket(i, k)), -sgn(odd(V.degree(i)) && odd(V.degree(j))));
				if (!is_zero(lhs)) throw LieError("Jacobi fails for (" + name(i) + ", " + name(j) + ", " + name(k) + ")");
			}
	for (int i = 0; i < n; ++i) {
		if (!is_zero(g.diff(g.diff(i)))) throw LieError("d^2 != 0 on " + name(i));
		for (int j = 0; j < n; ++j) {
			Coords lhs = g.diff(g.bracket(i, j));
			add_to(lhs, g.bracket(g.diff(i), basis(j)), -1);
			add_to(lhs, g.bracket(basis(i), g.diff(j)), -sgn(odd(V.degree(i))));
			if (!is_zero(lhs)) throw LieError("Leibniz fails for (" + name(i) + ", " + name(j) + ")");
		}
	}

	if (weights) {
		if (static_cast<int>(weights->size()) != n) throw LieError("one weight per basis vector is required");
		if (auto w = weight_defect(g, *weights)) throw LieError(*w);
		g.weights_ = *weights;
		return g;
	}
	std::vector<int> ones(n, 1);
	if (!weight_defect(g, ones)) {
		g.weights_ = ones;
		return g;
	}
	// depth in the lower central series, for bases adapted to it
	g.weights_ = ones;
	const auto chain = lcs(g);
	std::vector<int> depth(n, 1);
	for (std::size_t p = 1; p < chain.terms.size(); ++p) {
		ColumnEliminator e;
		for (auto& v : chain.terms[p]) e.add_column(v);
		for (int i = 0; i < n; ++i)
			if (e.in_span(basis(i))) depth[i] = static_cast<int>(p) + 1;
	}
	if (auto w = weight_defect(g, depth))
		throw LieError("no weight grading found (tried all ones and lower central series depth): " + *w);
	g.weights_ = depth;
	return g;
}

// ------------------------------------------------------------- WeightAlgebra

SparseVec WeightAlgebra::multiply(const SparseVec& a, const SparseVec& b) const {
	SparseVec out;
	for (auto& [i, p] : a)
		for (auto& [j, q] : b)
			if (auto it = mult.find({i, j}); it != mult.end()) add_to(out, it->second, p * q);
	return out;
}

SparseVec WeightAlgebra::differential(const SparseVec& a) const {
	SparseVec out;
	for (auto& [i, p] : a) add_to(out, d[i], p);
	return out;
}

std::optional<int> WeightAlgebra::find_word(const Word& w) const {
	for (std::size_t i = 0; i < words.size(); ++i)
		if (words[i] == w) return static_cast<int>(i);
	return std::nullopt;
}

std::vector<int> WeightAlgebra::augmentation_ideal() const {
	std::vector<int> out;
	for (std::size_t i = 0; i < size(); ++i)
		if (weight[i] > 0) out.push_back(static_cast<int>(i));
	return out;
}

ChainComplex WeightAlgebra::complex() const { return ChainComplex{names, degree, weight, d}; }

std::map<int, std::size_t> WeightAlgebra::weight_dims() const {
	std::map<int, std::size_t> out;
	for (int w : weight) ++out[w];
	return out;
}

std::optional<std::string> WeightAlgebra::defect() const {
	const int n = static_cast<int>(size());
	auto e = [](int i) { return SparseVec{{i, Rational(1)}}; };
	for (int a = 0; a < n; ++a)
		for (int b = 0; b < n; ++b) {
			if (weight[a] + weight[b] > weight_max) continue;
			for (int c = 0; c < n; ++c) {
				if (weight[a] + weight[b] + weight[c] > weight_max) continue;
				auto l = multiply(multiply(e(a), e(b)), e(c));
				add_to(l, multiply(e(a), multiply(e(b), e(c))), -1);
				if (!l.empty()) return "associativity fails at (" + names[a] + ", " + names[b] + ", " + names[c] + ")";
			}
			auto l = differential(multiply(e(a), e(b)));
			add_to(l, multiply(d[a], e(b)), -1);
			add_to(l, multiply(e(a), d[b]), -sgn(odd(degree[a])));
			if (!l.empty()) return "Leibniz fails at (" + names[a] + ", " + names[b] + ")";
		}
	for (int a = 0; a < n; ++a)
		if (!differential(d[a]).empty()) return "d^2 != 0 on " + names[a];
	if (unit)
		for (int a = 0; a < n; ++a)
			if (multiply(e(*unit), e(a)) != e(a) || multiply(e(a), e(*unit)) != e(a))
				return "unit law fails at " + names[a];
	if (augmentation) {
		auto eps = [&](const SparseVec& v) {
			Rational s = 0;
			for (auto& [i, q] : v)
				if (auto it = augmentation->find(i); it != augmentation->end()) s += q * it->second;
			return s;
		};
		for (int a = 0; a < n; ++a) {
			if (eps(d[a]) != 0) return "augmentation does not vanish on d(" + names[a] + ")";
			for (int b = 0; b < n; ++b)
				if (weight[a] + weight[b] <= weight_max && eps(multiply(e(a), e(b))) != eps(e(a)) * eps(e(b)))
					return "augmentation is not multiplicative at (" + names[a] + ", " + names[b] + ")";
		}
	}
	return std::nullopt;
}

// ----------------------------------------------------------- WeightCoalgebra

ChainComplex WeightCoalgebra::complex() const { return ChainComplex{names, degree, weight, d}; }

namespace {

using Tensor2 = std::map<std::pair<int, int>, Rational>;
using Tensor3 = std::map<std::tuple<int, int, int>, Rational>;

void add_t2(Tensor2& t, int a, int b, const Rational& c) {
	auto& x = t[{a, b}];
	x += c;
	if (x == 0) t.erase({a, b});
}

void add_t3(Tensor3& t, int a, int b, int c, const Rational& q) {
	auto& x = t[{a, b, c}];
	x += q;
	if (x == 0) t.erase({a, b, c});
}

} // namespace

std::optional<std::string> WeightCoalgebra::defect() const {
	const int n = static_cast<int>(size());
	for (int i = 0; i < n; ++i) {
		// (D (x) 1) D = (1 (x) D) D
		Tensor3 lhs, rhs;
		for (auto& [lr, c] : coproduct[i]) {
			for (auto& [lr2, c2] : coproduct[lr.first]) add_t3(lhs, lr2.first, lr2.second, lr.second, c * c2);
			for (auto& [lr2, c2] : coproduct[lr.second]) add_t3(rhs, lr.first, lr2.first, lr2.second, c * c2);
		}
		if (lhs != rhs) return "coassociativity fails at " + names[i];
		if (cocommutative)
			for (auto& [lr, c] : coproduct[i]) {
				Rational sw = c * sgn(odd(degree[lr.first]) && odd(degree[lr.second]));
				auto it = coproduct[i].find({lr.second, lr.first});
				if (it == coproduct[i].end() || it->second != sw) return "cocommutativity fails at " + names[i];
			}
		// D d = (d (x) 1 + 1 (x) d) D
		Tensor2 a, b;
		for (auto& [j, q] : d[i])
			for (auto& [lr, c] : coproduct[j]) add_t2(a, lr.first, lr.second, q * c);
		for (auto& [lr, c] : coproduct[i]) {
			for (auto& [k, q] : d[lr.first]) add_t2(b, k, lr.second, c * q);
			for (auto& [k, q] : d[lr.second]) add_t2(b, lr.first, k, c * q * sgn(odd(degree[lr.first])));
		}
		if (a != b) return "d is not a coderivation at " + names[i];
		SparseVec dd;
		for (auto& [j, q] : d[i]) add_to(dd, d[j], q);
		if (!dd.empty()) return "d^2 != 0 on " + names[i];
	}
	return std::nullopt;
}

// ------------------------------------------------------------------------ UEA

namespace {

class Straightener {
public:
	Straightener(const FiniteDgLie& g, int W) : g_(g), W_(W) {
		for (std::size_t i = 0; i < g.dim(); ++i) deg_.push_back(g.degree(static_cast<int>(i)));
	}

	// Word in the generators -> combination of PBW monomials.
	const std::map<Word, Rational>& operator()(const Word& w) {
		if (auto it = memo_.find(w); it != memo_.end()) return it->second;
		std::map<Word, Rational> out;
		if (word_sum(w, g_.weights()) <= W_) {
			std::size_t i = 0;
			while (i + 1 < w.size() && !(w[i] > w[i + 1] || (w[i] == w[i + 1] && odd(deg_[w[i]])))) ++i;
			if (i + 1 >= w.size()) {
				out[w] = 1;
			} else {
				const int a = w[i], b = w[i + 1];
				auto replace = [&](int c) {
					Word v(w.begin(), w.begin() + i);
					v.push_back(c);
					v.insert(v.end(), w.begin() + i + 2, w.end());
					return v;
				};
				if (a != b) {
					// ab = (-1)^{|a||b|} ba + [a,b]
					Word v = w;
					std::swap(v[i], v[i + 1]);
					accumulate(out, v, sgn(odd(deg_[a]) && odd(deg_[b])));
					for (auto& [c, q] : g_.bracket(a, b)) accumulate(out, replace(c), q);
				} else {
					// aa = [a,a]/2 for odd a
					for (auto& [c, q] : g_.bracket(a, a)) accumulate(out, replace(c), q / 2);
				}
			}
		}
		return memo_.emplace(w, std::move(out)).first->second;
	}

private:
	void accumulate(std::map<Word, Rational>& out, const Word& v, const Rational& c) {
		auto sub = (*this)(v); // copy: the memo may rehash
		for (auto& [m, q] : sub) {
			auto& x = out[m];
			x += c * q;
			if (x == 0) out.erase(m);
		}
	}

	const FiniteDgLie& g_;
	int W_;
	std::vector<int> deg_;
	std::map<Word, std::map<Word, Rational>> memo_;
};

} // namespace

WeightAlgebra uea(const FiniteDgLie& g, int W) {
	if (W < 1) throw LieError("weight cap must be at least 1");
	std::vector<int> deg;
	for (std::size_t i = 0; i < g.dim(); ++i) deg.push_back(g.degree(static_cast<int>(i)));
	std::vector<Word> mono;
	enumerate_words(g.weights(), W, true, true, [&](const Word& w) { return !repeats_odd(w, deg); }, mono);
	std::map<Word, int> index;
	WeightAlgebra U;
	U.weight_max = W;
	std::vector<std::string> gnames;
	for (std::size_t i = 0; i < g.dim(); ++i) gnames.push_back(g.space()->name(static_cast<int>(i)));
	for (auto& w : mono) {
		index[w] = static_cast<int>(U.names.size());
		U.names.push_back(w.empty() ? "1" : join_names(w, gnames, "*"));
		U.degree.push_back(word_sum(w, deg));
		U.weight.push_back(word_sum(w, g.weights()));
		U.words.push_back(w);
	}
	U.unit = index.at(Word{});
	U.augmentation = SparseVec{{*U.unit, Rational(1)}};
	Straightener st(g, W);
	auto to_vec = [&](const std::map<Word, Rational>& m) {
		SparseVec v;
		for (auto& [w, q] : m) v[index.at(w)] = q;
		return v;
	};
	const int n = static_cast<int>(mono.size());
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j) {
			if (U.weight[i] + U.weight[j] > W) continue;
			Word w = mono[i];
			w.insert(w.end(), mono[j].begin(), mono[j].end());
			auto v = to_vec(st(w));
			if (!v.empty()) U.mult[{i, j}] = std::move(v);
		}
	U.d.assign(n, {});
	for (int i = 0; i < n; ++i) {
		const auto& w = mono[i];
		int before = 0;
		for (std::size_t k = 0; k < w.size(); ++k) {
			for (auto& [c, q] : g.diff(w[k])) {
				Word v = w;
				v[k] = c;
				add_to(U.d[i], to_vec(st(v)), q * sgn(odd(before)));
			}
			before += deg[w[k]];
		}
	}
	return U;
}

// ------------------------------------------------------------ lcs, filtrations

LcsResult lcs(const FiniteDgLie& g, int max_steps) {
	LcsResult r;
	std::vector<SparseVec> cur;
	for (std::size_t i = 0; i < g.dim(); ++i) cur.push_back(SparseVec{{static_cast<int>(i), Rational(1)}});
	r.terms.push_back(cur);
	for (int step = 1; step <= max_steps; ++step) {
		if (cur.empty()) {
			r.nilpotency_class = step - 1;
			break;
		}
		std::vector<SparseVec> next;
		for (std::size_t i = 0; i < g.dim(); ++i)
			for (auto& v : cur) {
				auto b = g.bracket(Coords{{static_cast<int>(i), Rational(1)}}, v);
				if (!b.empty()) next.push_back(b);
			}
		cur = span_basis(next);
		r.terms.push_back(cur);
	}
	return r;
}

bool weights_follow_lcs(const FiniteDgLie& g) {
	const auto chain = lcs(g);
	if (!chain.nilpotency_class) return false;
	for (std::size_t p = 0; p < chain.terms.size(); ++p) {
		std::vector<SparseVec> by_weight;
		for (std::size_t i = 0; i < g.dim(); ++i)
			if (g.weight(static_cast<int>(i)) >= static_cast<int>(p) + 1)
				by_weight.push_back(SparseVec{{static_cast<int>(i), Rational(1)}});
		auto both = by_weight;
		both.insert(both.end(), chain.terms[p].begin(), chain.terms[p].end());
		const auto r = rank_of(both);
		if (r != by_weight.size() || r != chain.terms[p].size()) return false;
	}
	return true;
}

std::vector<SparseVec> operadic_filtration(const FiniteDgLie& g, int n) {
	if (n < 1) throw LieError("filtration index must be at least 1");
	const auto chain = lcs(g, n);
	return n - 1 < static_cast<int>(chain.terms.size()) ? chain.terms[n - 1] : std::vector<SparseVec>{};
}

std::vector<SparseVec> operadic_filtration(const WeightAlgebra& A, int n) {
	if (n < 1) throw LieError("filtration index must be at least 1");
	std::vector<SparseVec> ideal, cur;
	for (int i : A.augmentation_ideal()) ideal.push_back(SparseVec{{i, Rational(1)}});
	cur = span_basis(ideal);
	for (int k = 2; k <= n; ++k) {
		std::vector<SparseVec> next;
		for (auto& a : ideal)
			for (auto& v : cur) {
				auto p = A.multiply(a, v);
				if (!p.empty()) next.push_back(p);
			}
		cur = span_basis(next);
	}
	return cur;
}

// ----------------------------------------------------------- augmentations

AugmentationFix fix_augmentation(const FiniteDgLie& g, const WeightAlgebra& U, const std::vector<Rational>& eps_bar,
                                 int check_weight) {
	const int n = static_cast<int>(g.dim());
	if (static_cast<int>(eps_bar.size()) != n) throw LieError("augmentation needs one value per basis vector of g");
	const auto& V = *g.space();
	auto ev = [&](const Coords& v) {
		Rational s = 0;
		for (auto& [i, q] : v) s += q * eps_bar[i];
		return s;
	};
	for (int i = 0; i < n; ++i) {
		if (eps_bar[i] != 0 && V.degree(i) != 0)
			throw LieError("augmentation is nonzero on " + V.name(i) + ", which is not of degree 0");
		if (ev(g.diff(i)) != 0) throw LieError("augmentation does not vanish on d(" + V.name(i) + ")");
		for (int j = 0; j < n; ++j) {
			Rational expect = eps_bar[i] * eps_bar[j] -
			                  Rational(sgn(odd(V.degree(i)) && odd(V.degree(j)))) * eps_bar[j] * eps_bar[i];
			if (ev(g.bracket(i, j)) != expect)
				throw LieError("augmentation is not an algebra map: fails on [" + V.name(i) + "," + V.name(j) + "]");
		}
	}
	if (!U.unit) throw LieError("enveloping algebra has no unit");
	const int u = *U.unit;
	auto e = [](int i) { return SparseVec{{i, Rational(1)}}; };
	std::vector<SparseVec> gen(n);
	for (int i = 0; i < n; ++i) {
		auto k = U.find_word({i});
		if (!k) throw LieError("generator " + V.name(i) + " is missing from the enveloping algebra");
		gen[i] = e(*k);
		add_to(gen[i], u, -eps_bar[i]);
	}
	AugmentationFix fx;
	for (std::size_t b = 0; b < U.size(); ++b) {
		SparseVec a = e(u);
		for (int letter : U.words[b]) a = U.multiply(a, gen[letter]);
		fx.alpha.push_back(std::move(a));
	}
	// eps_bar extended multiplicatively over PBW monomials
	auto eps_bar_u = [&](const SparseVec& v) {
		Rational s = 0;
		for (auto& [i, q] : v) {
			Rational m = 1;
			for (int letter : U.words[i]) m *= eps_bar[letter];
			s += q * m;
		}
		return s;
	};
	for (std::size_t b = 0; b < U.size(); ++b) {
		if (U.weight[b] > check_weight) continue;
		++fx.checked_monomials;
		const Rational eps = static_cast<int>(b) == u ? 1 : 0;
		if (eps_bar_u(fx.alpha[b]) != eps) throw LieError("eps != eps_bar o alpha at " + U.names[b]);
		auto diff = fx.alpha[b];
		add_to(diff, e(static_cast<int>(b)), -1);
		for (auto& [j, q] : diff)
			if (U.weight[j] >= U.weight[b]) throw LieError("alpha is not the identity on the associated graded at " + U.names[b]);
		auto da = U.differential(fx.alpha[b]);
		SparseVec ad;
		for (auto& [j, q] : U.d[b]) add_to(ad, fx.alpha[j], q);
		if (da != ad) throw LieError("alpha does not commute with d at " + U.names[b]);
		for (std::size_t c = 0; c < U.size(); ++c) {
			if (U.weight[b] + U.weight[c] > check_weight) continue;
			SparseVec lhs;
			for (auto& [j, q] : U.multiply(e(static_cast<int>(b)), e(static_cast<int>(c)))) add_to(lhs, fx.alpha[j], q);
			if (lhs != U.multiply(fx.alpha[b], fx.alpha[c]))
				throw LieError("alpha is not multiplicative at (" + U.names[b] + ", " + U.names[c] + ")");
		}
	}
	return fx;
}

// --------------------------------------------------------------- CE chains

WeightCoalgebra ce_chains(const FiniteDgLie& g, int W) {
	if (W < 1) throw LieError("weight cap must be at least 1");
	const int n = static_cast<int>(g.dim());
	std::vector<int> sdeg(n);
	std::vector<std::string> snames(n);
	for (int i = 0; i < n; ++i) {
		sdeg[i] = g.degree(i) + 1;
		snames[i] = "s" + g.space()->name(i);
	}
	std::vector<Word> words;
	enumerate_words(g.weights(), W, true, false, [&](const Word& w) { return !repeats_odd(w, sdeg); }, words);
	std::map<Word, int> index;
	WeightCoalgebra C;
	C.weight_max = W;
	C.cocommutative = true;
	for (auto& w : words) {
		index[w] = static_cast<int>(C.names.size());
		C.names.push_back(join_names(w, snames, "^"));
		C.degree.push_back(word_sum(w, sdeg));
		C.weight.push_back(word_sum(w, g.weights()));
		C.words.push_back(w);
	}
	// graded-symmetric word -> (sign, index) or nothing
	auto normal = [&](const Word& w) -> std::optional<std::pair<int, int>> {
		auto [s, sorted] = sort_with_sign(w, sdeg);
		if (repeats_odd(sorted, sdeg)) return std::nullopt;
		return std::make_pair(s, index.at(sorted));
	};
	const int N = static_cast<int>(words.size());
	C.coproduct.resize(N);
	C.d.resize(N);
	for (int i = 0; i < N; ++i) {
		const auto& w = words[i];
		const int len = static_cast<int>(w.size());
		std::vector<int> wdeg;
		for (int a : w) wdeg.push_back(sdeg[a]);
		// unshuffles
		for (int mask = 1; mask + 1 < (1 << len); ++mask) {
			Word l, r;
			std::vector<int> perm(len);
			const int nl = __builtin_popcount(static_cast<unsigned>(mask));
			int pl = 0, pr = 0;
			for (int k = 0; k < len; ++k)
				if (mask >> k & 1) {
					l.push_back(w[k]);
					perm[k] = ++pl;
				} else {
					r.push_back(w[k]);
					perm[k] = nl + ++pr;
				}
			add_t2(C.coproduct[i], index.at(l), index.at(r), koszul_sign(perm, wdeg));
		}
		// internal part: d(sx) = -s(dx), extended as a coderivation
		int before = 0;
		for (int k = 0; k < len; ++k) {
			for (auto& [c, q] : g.diff(w[k])) {
				Word v = w;
				v[k] = c;
				if (auto nv = normal(v)) add_to(C.d[i], nv->second, -q * nv->first * sgn(odd(before)));
			}
			before += sdeg[w[k]];
		}
		// bracket part: s x . s y -> (-1)^{|sx|} s[x,y]
		for (int a = 0; a < len; ++a)
			for (int b = a + 1; b < len; ++b) {
				std::vector<int> perm(len);
				int pos = 3;
				for (int k = 0; k < len; ++k) perm[k] = k == a ? 1 : k == b ? 2 : pos++;
				const int eps = koszul_sign(perm, wdeg) * sgn(odd(sdeg[w[a]]));
				Word rest;
				for (int k = 0; k < len; ++k)
					if (k != a && k != b) rest.push_back(w[k]);
				for (auto& [c, q] : g.bracket(w[a], w[b])) {
					Word v{c};
					v.insert(v.end(), rest.begin(), rest.end());
					if (auto nv = normal(v)) add_to(C.d[i], nv->second, q * eps * nv->first);
				}
			}
	}
	return C;
}

// --------------------------------------------------------------------- bar

WeightCoalgebra bar(const WeightAlgebra& A, int W) {
	if (W < 1) throw LieError("weight cap must be at least 1");
	const auto ideal = A.augmentation_ideal();
	std::map<int, int> letter_of;
	std::vector<int> lweight, sdeg;
	std::vector<std::string> lnames;
	for (int i : ideal) {
		letter_of[i] = static_cast<int>(lweight.size());
		lweight.push_back(A.weight[i]);
		sdeg.push_back(A.degree[i] + 1);
		lnames.push_back("s" + A.names[i]);
	}
	std::vector<Word> words;
	enumerate_words(lweight, W, false, false, [](const Word&) { return true; }, words);
	std::map<Word, int> index;
	WeightCoalgebra B;
	B.weight_max = W;
	for (auto& w : words) {
		index[w] = static_cast<int>(B.names.size());
		B.names.push_back("[" + join_names(w, lnames, "|") + "]");
		B.degree.push_back(word_sum(w, sdeg));
		B.weight.push_back(word_sum(w, lweight));
		B.words.push_back(w);
	}
	auto letter_vec = [&](const SparseVec& v, const char* what) {
		std::vector<std::pair<int, Rational>> out;
		for (auto& [j, q] : v) {
			auto it = letter_of.find(j);
			if (it == letter_of.end()) throw LieError(std::string(what) + " leaves the augmentation ideal");
			out.emplace_back(it->second, q);
		}
		return out;
	};
	const int N = static_cast<int>(words.size());
	B.coproduct.resize(N);
	B.d.resize(N);
	for (int i = 0; i < N; ++i) {
		const auto& w = words[i];
		const int len = static_cast<int>(w.size());
		for (int k = 1; k < len; ++k)
			add_t2(B.coproduct[i], index.at(Word(w.begin(), w.begin() + k)), index.at(Word(w.begin() + k, w.end())), 1);
		int eps = 0; // sum of suspended degrees before position k
		for (int k = 0; k < len; ++k) {
			const int a = ideal[w[k]];
			for (auto& [c, q] : letter_vec(A.d[a], "differential")) {
				Word v = w;
				v[k] = c;
				add_to(B.d[i], index.at(v), -q * sgn(odd(eps)));
			}
			eps += sdeg[w[k]];
			if (k + 1 < len) {
				const auto prod = A.multiply(SparseVec{{a, Rational(1)}}, SparseVec{{ideal[w[k + 1]], Rational(1)}});
				for (auto& [c, q] : letter_vec(prod, "product")) {
					Word v(w.begin(), w.begin() + k);
					v.push_back(c);
					v.insert(v.end(), w.begin() + k + 2, w.end());
					add_to(B.d[i], index.at(v), q * sgn(odd(eps)));
				}
			}
		}
	}
	return B;
}

// ------------------------------------------------------------------- cobar

WeightAlgebra cobar(const WeightCoalgebra& C, int W, bool with_unit) {
	if (W < 1) throw LieError("weight cap must be at least 1");
	const int m = static_cast<int>(C.size());
	std::vector<int> gdeg(m);
	std::vector<std::string> gnames(m);
	for (int i = 0; i < m; ++i) {
		gdeg[i] = C.degree[i] - 1;
		gnames[i] = "~" + C.names[i];
	}
	std::vector<Word> words;
	enumerate_words(C.weight, W, false, with_unit, [](const Word&) { return true; }, words);
	std::map<Word, int> index;
	WeightAlgebra A;
	A.weight_max = W;
	for (auto& w : words) {
		index[w] = static_cast<int>(A.names.size());
		A.names.push_back(w.empty() ? "1" : join_names(w, gnames, " "));
		A.degree.push_back(word_sum(w, gdeg));
		A.weight.push_back(word_sum(w, C.weight));
		A.words.push_back(w);
	}
	if (with_unit) {
		A.unit = index.at(Word{});
		A.augmentation = SparseVec{{*A.unit, Rational(1)}};
	}
	const int N = static_cast<int>(words.size());
	for (int i = 0; i < N; ++i)
		for (int j = 0; j < N; ++j) {
			if (A.weight[i] + A.weight[j] > W) continue;
			Word w = words[i];
			w.insert(w.end(), words[j].begin(), words[j].end());
			A.mult[{i, j}] = SparseVec{{index.at(w), Rational(1)}};
		}
	// d(s^-1 c) = -s^-1 dc + sum (-1)^{|c'|} s^-1 c' s^-1 c''
	std::vector<std::map<Word, Rational>> dgen(m);
	for (int c = 0; c < m; ++c) {
		for (auto& [k, q] : C.d[c]) dgen[c][{k}] -= q;
		for (auto& [lr, q] : C.coproduct[c]) dgen[c][{lr.first, lr.second}] += q * sgn(odd(C.degree[lr.first]));
	}
	A.d.assign(N, {});
	for (int i = 0; i < N; ++i) {
		const auto& w = words[i];
		int before = 0;
		for (std::size_t k = 0; k < w.size(); ++k) {
			for (auto& [piece, q] : dgen[w[k]]) {
				if (q == 0) continue;
				Word v(w.begin(), w.begin() + k);
				v.insert(v.end(), piece.begin(), piece.end());
				v.insert(v.end(), w.begin() + k + 1, w.end());
				add_to(A.d[i], index.at(v), q * sgn(odd(before)));
			}
			before += gdeg[w[k]];
		}
	}
	return A;
}

namespace {

SparseVec commutator(const WeightAlgebra& A, const SparseVec& a, int da, const SparseVec& b, int db) {
	auto out = A.multiply(a, b);
	add_to(out, A.multiply(b, a), -sgn(odd(da) && odd(db)));
	return out;
}

} // namespace

LieCobar cobar_complete(const WeightCoalgebra& C, int W, CobarFlavor flavor) {
	LieCobar L;
	L.ambient = cobar(C, W);
	if (flavor == CobarFlavor::associative) return L;
	if (!C.cocommutative) throw LieError("the Lie cobar construction needs a cocommutative coalgebra");
	const auto& A = L.ambient;

	struct Elem {
		SparseVec v;
		int degree, weight, length, letters;
		std::pair<int, int> tree;
		std::string name;
	};
	std::vector<Elem> basis;
	ColumnEliminator sel;
	std::vector<int> level_start{0};
	for (int c = 0; c < static_cast<int>(C.size()); ++c) {
		auto k = A.find_word({c});
		SparseVec v{{*k, Rational(1)}};
		sel.add_column(v);
		basis.push_back({v, A.degree[*k], A.weight[*k], 1, static_cast<int>(C.words[c].size()), {-1 - c, -1},
		                 A.names[*k]});
	}
	const int ngen = static_cast<int>(basis.size());
	for (int len = 2; len <= W; ++len) {
		const int prev_begin = level_start.back(), prev_end = static_cast<int>(basis.size());
		level_start.push_back(prev_end);
		for (int gi = 0; gi < ngen; ++gi)
			for (int b = prev_begin; b < prev_end; ++b) {
				const auto& G = basis[gi];
				const auto& R = basis[b];
				if (G.weight + R.weight > W) continue;
				auto v = commutator(A, G.v, G.degree, R.v, R.degree);
				if (v.empty() || sel.add_column(v)) continue;
				basis.push_back({v, G.degree + R.degree, G.weight + R.weight, len, G.letters + R.letters, {gi, b},
				                 "[" + G.name + "," + R.name + "]"});
			}
		if (static_cast<int>(basis.size()) == prev_end) break;
	}

	ColumnEliminator coords;
	for (auto& e : basis) coords.add_column(e.v);
	auto express = [&](const SparseVec& v, const std::string& what) {
		auto x = coords.solve(v);
		if (!x) throw LieError(what + " is not a Lie element");
		return *x;
	};
	std::vector<std::pair<std::string, int>> sbasis;
	std::vector<int> weights;
	for (auto& e : basis) {
		sbasis.emplace_back(e.name, e.degree);
		weights.push_back(e.weight);
		L.embed.push_back(e.v);
		L.length.push_back(e.length);
		L.letters.push_back(e.letters);
		L.tree.push_back(e.tree);
	}
	auto space = make_space(sbasis);
	MultilinearMap br(space, 2, 0), dd(space, 1, -1);
	const int n = static_cast<int>(basis.size());
	for (int i = 0; i < n; ++i) {
		for (int j = 0; j < n; ++j) {
			if (basis[i].weight + basis[j].weight > W) continue;
			auto v = commutator(A, basis[i].v, basis[i].degree, basis[j].v, basis[j].degree);
			if (!v.empty()) br.add({i, j}, express(v, "bracket of " + basis[i].name + " and " + basis[j].name));
		}
		auto dv = A.differential(basis[i].v);
		if (!dv.empty()) dd.add({i}, express(dv, "differential of " + basis[i].name));
	}
	L.lie = FiniteDgLie::make(space, br, dd, weights);
	return L;
}

// ------------------------------------------------ homotopy completion model

CompletionModel homotopy_completion_model(const FiniteDgLie& g, int W) {
	if (!weights_follow_lcs(g))
		throw LieError("the weight grading of g does not match its lower central series, so it cannot carry F");
	CompletionModel m;
	m.ce = ce_chains(g, W);
	m.q = cobar_complete(m.ce, W, CobarFlavor::lie);
	m.source = m.q.lie.complex();
	m.target = g.complex();
	m.F = m.source.weight;
	m.G = m.q.length;
	m.target_F = g.weights();
	const int n = static_cast<int>(m.source.size());
	m.counit.assign(n, {});
	for (int i = 0; i < n; ++i) {
		auto [a, b] = m.q.tree[i];
		if (b < 0) {
			const auto& w = m.ce.words[-1 - a];
			if (w.size() == 1) m.counit[i] = SparseVec{{w[0], Rational(1)}};
		} else {
			m.counit[i] = g.bracket(m.counit[a], m.counit[b]);
		}
	}
	if (auto bad = chain_map_defect(m.counit_map()))
		throw LieError("counit is not a chain map at " + m.source.names[*bad]);
	return m;
}

bool CommensurabilityWitness::holds() const {
	for (auto* rows : {&g_inside_f, &f_inside_g})
		for (auto& r : *rows)
			if (r.observed > r.bound) return false;
	return true;
}

CommensurabilityWitness commensurability(const CompletionModel& m, const FiniteDgLie& g) {
	for (std::size_t i = 0; i < g.dim(); ++i)
		if (g.degree(static_cast<int>(i)) < 0) throw LieError("commensurability bound needs g in nonnegative degrees");
	const int wmax = *std::max_element(g.weights().begin(), g.weights().end());
	std::map<Bigrade, int> gf, fg;
	for (std::size_t i = 0; i < m.source.size(); ++i) {
		const int k = m.source.degree[i];
		auto& a = gf[{k, m.F[i]}];
		a = std::max(a, m.G[i]);
		auto& b = fg[{k, m.G[i]}];
		b = std::max(b, m.F[i]);
	}
	CommensurabilityWitness w;
	for (auto& [kp, obs] : gf) w.g_inside_f.push_back({kp.first, kp.second, obs, kp.second});
	// in degree k an element of G-level p has at most k + p letters of g
	for (auto& [kp, obs] : fg) w.f_inside_g.push_back({kp.first, kp.second, obs, wmax * (kp.first + kp.second)});
	return w;
}

NilpotenceWitness degreewise_nilpotence(const CompletionModel& m) {
	NilpotenceWitness w;
	w.holds = true;
	for (std::size_t i = 0; i < m.source.size(); ++i) {
		const int k = m.source.degree[i];
		auto& x = w.max_level_by_degree[k];
		x = std::max(x, m.G[i]);
	}
	for (auto& [k, lvl] : w.max_level_by_degree)
		if (k >= 0 || lvl > -k) w.holds = false;
	return w;
}

CobarUeaComparison compare_cobar_with_uea(const WeightCoalgebra& C, int W) {
	CobarUeaComparison r;
	const auto omega = cobar(C, W, true);
	const auto L = cobar_complete(C, W, CobarFlavor::lie);
	const auto U = uea(L.lie, W);
	r.dims_omega = omega.weight_dims();
	r.dims_u = U.weight_dims();
	// Lie basis element -> coordinates in (Omega C)+
	std::vector<SparseVec> lie_in_omega;
	for (auto& v : L.embed) {
		SparseVec out;
		for (auto& [j, q] : v) out[*omega.find_word(L.ambient.words[j])] = q;
		lie_in_omega.push_back(std::move(out));
	}
	std::vector<SparseVec> phi;
	for (std::size_t b = 0; b < U.size(); ++b) {
		SparseVec x{{*omega.unit, Rational(1)}};
		for (int letter : U.words[b]) x = omega.multiply(x, lie_in_omega[letter]);
		phi.push_back(std::move(x));
	}
	auto image = [&](const SparseVec& v) {
		SparseVec out;
		for (auto& [j, q] : v) add_to(out, phi[j], q);
		return out;
	};
	auto e = [](int i) { return SparseVec{{i, Rational(1)}}; };
	r.algebra_map = r.chain_map = true;
	for (std::size_t a = 0; a < U.size(); ++a) {
		if (image(U.d[a]) != omega.differential(phi[a])) r.chain_map = false;
		for (std::size_t b = 0; b < U.size(); ++b)
			if (U.weight[a] + U.weight[b] <= W &&
			    image(U.multiply(e(static_cast<int>(a)), e(static_cast<int>(b)))) != omega.multiply(phi[a], phi[b]))
				r.algebra_map = false;
	}
	r.bijective = r.dims_omega == r.dims_u && rank_of(phi) == omega.size();
	return r;
}

// ------------------------------------------------------------------ fixtures

namespace {

FiniteDgLie from_table(std::vector<std::pair<std::string, int>> basis,
                       const std::vector<std::tuple<int, int, int, Rational>>& brackets) {
	auto V = make_space(basis);
	MultilinearMap br(V, 2, 0);
	for (auto& [i, j, k, c] : brackets) {
		br.add({i, j}, k, c);
		if (i != j) br.add({j, i}, k, -c * sgn(odd(V->degree(i)) && odd(V->degree(j))));
	}
	return FiniteDgLie::make(V, br);
}

} // namespace

FiniteDgLie abelian_lie(int dim) {
	std::vector<std::pair<std::string, int>> basis;
	for (int i = 0; i < dim; ++i) basis.emplace_back(dim == 1 ? "x" : "x" + std::to_string(i + 1), 0);
	return from_table(basis, {});
}

FiniteDgLie heisenberg_lie() { return from_table({{"x", 0}, {"y", 0}, {"z", 0}}, {{0, 1, 2, Rational(1)}}); }

FiniteDgLie free_nilpotent_class2() { return from_table({{"a", 0}, {"b", 0}, {"c", 0}}, {{0, 1, 2, Rational(1)}}); }

FiniteDgLie negative_graded_lie() { return from_table({{"a", -1}, {"b", -2}}, {{0, 0, 1, Rational(1)}}); }

WeightAlgebra truncated_polynomial(int top) {
	if (top < 1) throw LieError("truncated polynomial needs top >= 1");
	WeightAlgebra A;
	A.weight_max = top;
	for (int k = 1; k <= top; ++k) {
		A.names.push_back(k == 1 ? "x" : "x^" + std::to_string(k));
		A.degree.push_back(0);
		A.weight.push_back(k);
		A.words.push_back(Word(k, 0));
	}
	for (int i = 1; i <= top; ++i)
		for (int j = 1; i + j <= top; ++j) A.mult[{i - 1, j - 1}] = SparseVec{{i + j - 1, Rational(1)}};
	A.d.assign(top, {});
	return A;
}

// ----------------------------------------------------------------------- JSON

Json lie_to_json(const FiniteDgLie& g) {
	Json j;
	j["basis"] = Json::array();
	const auto& V = *g.space();
	for (std::size_t i = 0; i < g.dim(); ++i) j["basis"].push_back({V.name(static_cast<int>(i)), V.degree(static_cast<int>(i))});
	j["weights"] = g.weights();
	j["bracket"] = Json::array();
	for (std::size_t a = 0; a < g.dim(); ++a)
		for (std::size_t b = a; b < g.dim(); ++b)
			for (auto& [k, q] : g.bracket(static_cast<int>(a), static_cast<int>(b)))
				j["bracket"].push_back({V.name(static_cast<int>(a)), V.name(static_cast<int>(b)), V.name(k), format_rational(q)});
	j["differential"] = Json::array();
	for (std::size_t a = 0; a < g.dim(); ++a)
		for (auto& [k, q] : g.diff(static_cast<int>(a)))
			j["differential"].push_back({V.name(static_cast<int>(a)), V.name(k), format_rational(q)});
	return j;
}

FiniteDgLie lie_from_json(const Json& j) {
	const auto& jb = require(j, "basis");
	if (!jb.is_array()) throw ParseError("\"basis\" must be an array of [name, degree] pairs");
	std::vector<std::pair<std::string, int>> basis;
	for (std::size_t i = 0; i < jb.size(); ++i) {
		const auto& e = jb[i];
		const std::string where = "basis[" + std::to_string(i) + "]";
		if (!e.is_array() || e.size() != 2) throw ParseError(where + " must be [name, degree]");
		basis.emplace_back(json_string(e[0], where), json_int(e[1], where));
	}
	auto V = make_space(basis);
	auto idx = [&](const Json& e, const std::string& where) {
		auto name = json_string(e, where);
		auto k = V->find(name);
		if (!k) throw ParseError(where + ": unknown basis element \"" + name + "\"");
		return *k;
	};
	std::map<std::pair<int, int>, Coords> given;
	if (j.contains("bracket")) {
		const auto& jr = j["bracket"];
		if (!jr.is_array()) throw ParseError("\"bracket\" must be an array");
		for (std::size_t i = 0; i < jr.size(); ++i) {
			const std::string where = "bracket[" + std::to_string(i) + "]";
			const auto& e = jr[i];
			if (!e.is_array() || e.size() != 4) throw ParseError(where + " must be [x, y, z, coefficient]");
			add_to(given[{idx(e[0], where), idx(e[1], where)}], idx(e[2], where), json_rational(e[3], where));
		}
	}
	MultilinearMap br(V, 2, 0);
	for (auto& [ij, c] : given) {
		br.add({ij.first, ij.second}, c);
		if (ij.first != ij.second && !given.count({ij.second, ij.first}))
			br.add({ij.second, ij.first}, c, -sgn(odd(V->degree(ij.first)) && odd(V->degree(ij.second))));
	}
	MultilinearMap d(V, 1, -1);
	if (j.contains("differential")) {
		const auto& jd = j["differential"];
		if (!jd.is_array()) throw ParseError("\"differential\" must be an array");
		for (std::size_t i = 0; i < jd.size(); ++i) {
			const std::string where = "differential[" + std::to_string(i) + "]";
			const auto& e = jd[i];
			if (!e.is_array() || e.size() != 3) throw ParseError(where + " must be [x, y, coefficient]");
			d.add({idx(e[0], where)}, idx(e[1], where), json_rational(e[2], where));
		}
	}
	std::optional<std::vector<int>> weights;
	if (j.contains("weights")) {
		weights.emplace();
		const auto& jw = j["weights"];
		if (!jw.is_array() || jw.size() != basis.size()) throw ParseError("\"weights\" must list one weight per basis element");
		for (std::size_t i = 0; i < jw.size(); ++i) weights->push_back(json_int(jw[i], "weights[" + std::to_string(i) + "]"));
	}
	return FiniteDgLie::make(V, br, d, weights);
}

} // namespace cdef
