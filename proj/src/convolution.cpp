#include "cdef/convolution.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <mutex>
#include <ostream>

namespace cdef {

const char* to_string(Flavor f) {
	switch (f) {
	case Flavor::A: return "A-infinity";
	case Flavor::C: return "C-infinity";
	case Flavor::suA: return "su-A-infinity";
	case Flavor::suC: return "su-C-infinity";
	}
	return "?";
}

Flavor parse_flavor(const std::string& s) {
	if (s == "A-infinity" || s == "A") return Flavor::A;
	if (s == "C-infinity" || s == "C") return Flavor::C;
	if (s == "su-A-infinity" || s == "suA") return Flavor::suA;
	if (s == "su-C-infinity" || s == "suC") return Flavor::suC;
	throw ParseError("unknown flavor \"" + s + "\"");
}

bool is_commutative(Flavor f) { return f == Flavor::C || f == Flavor::suC; }
bool is_strictly_unital(Flavor f) { return f == Flavor::suA || f == Flavor::suC; }

bool flavor_contains(Flavor outer, Flavor inner) {
	if (outer == inner || outer == Flavor::A) return true;
	if (inner == Flavor::suC) return true;
	return false;
}

Flavor commutative_counterpart(Flavor f) { return is_strictly_unital(f) ? Flavor::suC : Flavor::C; }
Flavor associative_counterpart(Flavor f) { return is_strictly_unital(f) ? Flavor::suA : Flavor::A; }

ContextPtr ConvContext::make(SpacePtr space, Orientation o, Flavor f, int arity_max) {
	if (arity_max < 2) throw Error("arity_max must be at least 2");
	auto c = std::make_shared<ConvContext>();
	c->space = space;
	c->orientation = o;
	c->flavor = f;
	c->arity_max = arity_max;
	c->shifted = std::make_shared<const GradedSpace>(space->shifted(c->shift()));
	return c;
}

ContextPtr ConvContext::with_flavor(Flavor f) const {
	auto c = std::make_shared<ConvContext>(*this);
	c->flavor = f;
	return c;
}

ContextPtr ConvContext::with_delta(Components d) const {
	auto c = std::make_shared<ConvContext>(*this);
	c->delta = std::move(d);
	return c;
}

ContextPtr ConvContext::with_arity_max(int n) const {
	if (n < 2) throw Error("arity_max must be at least 2");
	auto c = std::make_shared<ConvContext>(*this);
	c->arity_max = n;
	for (auto it = c->delta.begin(); it != c->delta.end();)
		it = it->first > n ? c->delta.erase(it) : std::next(it);
	return c;
}

bool ConvContext::same_ambient(const ConvContext& o) const {
	return orientation == o.orientation && arity_max == o.arity_max && *space == *o.space;
}

bool ConvContext::operator==(const ConvContext& o) const {
	return same_ambient(o) && flavor == o.flavor && unit == o.unit && delta == o.delta;
}

ConvElement::ConvElement(ContextPtr ctx, int degree, Components comps) : ctx_(std::move(ctx)), degree_(degree) {
	for (auto& [n, f] : comps) add_component(f);
}

MultilinearMap ConvElement::component(int arity) const {
	auto it = comps_.find(arity);
	if (it != comps_.end()) return it->second;
	return MultilinearMap(ctx_->shifted, arity, degree_, ctx_->orientation);
}

void ConvElement::set_component(MultilinearMap f) {
	const int n = f.arity();
	comps_.erase(n);
	if (!f.is_zero()) add_component(f);
}

void ConvElement::add_component(const MultilinearMap& f, const Rational& c) {
	if (f.is_zero() || c == 0) return;
	if (f.degree() != degree_) throw Error("component degree differs from the element degree");
	if (f.orientation() != ctx_->orientation || !same_space(f.space(), ctx_->shifted))
		throw Error("component does not live on the context's shifted space");
	if (f.arity() > ctx_->arity_max) return;
	auto it = comps_.find(f.arity());
	if (it == comps_.end()) {
		comps_.emplace(f.arity(), c == 1 ? f : f * c);
		return;
	}
	it->second += c == 1 ? f : f * c;
	if (it->second.is_zero()) comps_.erase(it);
}

ConvElement ConvElement::with_context(ContextPtr ctx) const {
	if (!ctx->same_ambient(*ctx_)) throw Error("with_context: different ambient algebra");
	ConvElement r = *this;
	r.ctx_ = std::move(ctx);
	return r;
}

ConvElement ConvElement::truncated(int n) const { return arity_range(1, n); }

ConvElement ConvElement::arity_range(int lo, int hi) const {
	ConvElement r(ctx_, degree_);
	for (auto& [k, f] : comps_)
		if (k >= lo && k <= hi) r.comps_.emplace(k, f);
	return r;
}

ConvElement& ConvElement::operator+=(const ConvElement& o) {
	if (!ctx_) *this = ConvElement(o.ctx_, o.degree_);
	if (!ctx_->same_ambient(*o.ctx_)) throw Error("adding elements of different convolution algebras");
	ctx_ = join_context(ctx_, o.ctx_);
	if (is_zero()) degree_ = o.degree_;
	if (o.degree_ != degree_ && !o.is_zero()) throw Error("adding elements of different degree");
	for (auto& [n, f] : o.comps_) add_component(f);
	return *this;
}

ConvElement& ConvElement::operator-=(const ConvElement& o) { return *this += -o; }

ConvElement ConvElement::operator+(const ConvElement& o) const {
	ConvElement r = *this;
	r += o;
	return r;
}

ConvElement ConvElement::operator-(const ConvElement& o) const {
	ConvElement r = *this;
	r -= o;
	return r;
}

ConvElement ConvElement::operator-() const { return *this * Rational(-1); }

ConvElement ConvElement::operator*(const Rational& c) const {
	ConvElement r(ctx_, degree_);
	if (c == 0) return r;
	for (auto& [n, f] : comps_) r.comps_.emplace(n, f * c);
	return r;
}

bool ConvElement::operator==(const ConvElement& o) const {
	if (comps_ != o.comps_) return false;
	return is_zero() || degree_ == o.degree_;
}

ConvElement operator*(const Rational& c, const ConvElement& f) { return f * c; }

ConvElement base_differential_element(const ContextPtr& ctx) { return ConvElement(ctx, -1, ctx->delta); }

ContextPtr join_context(const ContextPtr& a, const ContextPtr& b) {
	if (a == b) return a;
	if (!a->same_ambient(*b)) throw Error("elements of different convolution algebras");
	if (flavor_contains(a->flavor, b->flavor)) return a;
	if (flavor_contains(b->flavor, a->flavor)) return b;
	return a->with_flavor(Flavor::A);
}

ConvElement star(const ConvElement& f, const ConvElement& g) {
	auto ctx = join_context(f.context(), g.context());
	const int N = ctx->arity_max;
	ConvElement r(ctx, f.degree() + g.degree());
	for (auto& [p, fp] : f.components())
		for (auto& [q, gq] : g.components()) {
			if (p + q - 1 > N) continue;
			for (int i = 1; i <= p; ++i) r.add_component(compose_at(fp, gq, i));
		}
	return r;
}

ConvElement bracket(const ConvElement& f, const ConvElement& g) {
	ConvElement r = star(f, g);
	const bool odd = (f.degree() & 1) && (g.degree() & 1);
	ConvElement s = star(g, f);
	if (odd) r += s;
	else r -= s;
	return r;
}

ConvElement differential(const ConvElement& f) {
	if (f.context()->delta.empty()) return ConvElement(f.context(), f.degree() - 1);
	return bracket(base_differential_element(f.context()), f).with_context(f.context());
}

ConvElement mc_defect(const ConvElement& x) {
	if (x.degree() != -1 && !x.is_zero()) throw Error("mc_defect: element must have degree -1");
	ConvElement y = x.is_zero() ? ConvElement(x.context(), -1) : x;
	return differential(y) + bracket(y, y) * Rational(1, 2);
}

bool is_mc(const ConvElement& x) { return mc_defect(x).is_zero(); }

ContextPtr twist(const ContextPtr& ctx, const ConvElement& x) {
	if (!is_mc(x.with_context(ctx))) throw Error("twist: element is not Maurer-Cartan");
	ConvElement d = base_differential_element(ctx) + x.with_context(ctx);
	return ctx->with_delta(d.components());
}

namespace {

FreePoly commutator(const FreePoly& P, const FreePoly& Q) {
	FreePoly r;
	for (auto& [u, x] : P)
		for (auto& [v, y] : Q) {
			Word uv = u, vu = v;
			uv.insert(uv.end(), v.begin(), v.end());
			vu.insert(vu.end(), u.begin(), u.end());
			r[uv] += x * y;
			r[vu] -= x * y;
		}
	for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
	return r;
}

void accumulate(FreePoly& P, const FreePoly& Q, const Rational& c) {
	for (auto& [w, x] : Q) {
		auto& y = P[w];
		y += x * c;
		if (y == 0) P.erase(w);
	}
}

Rational bernoulli(int n) {
	// B_0..B_n by the standard recurrence sum_{k<m+1} C(m+1,k) B_k = 0
	std::vector<Rational> B(n + 1);
	B[0] = 1;
	for (int m = 1; m <= n; ++m) {
		Rational s = 0;
		mpz_class binom = 1; // C(m+1, 0)
		for (int k = 0; k < m; ++k) {
			s += Rational(binom) * B[k];
			binom = binom * (m + 1 - k) / (k + 1);
		}
		B[m] = -s / (m + 1);
	}
	return B[n];
}

// Compositions of n into exactly k positive parts.
void compositions(int n, int k, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& fn) {
	if (k == 0) {
		if (n == 0) fn(cur);
		return;
	}
	for (int first = 1; first <= n - (k - 1); ++first) {
		cur.push_back(first);
		compositions(n - first, k - 1, cur, fn);
		cur.pop_back();
	}
}

} // namespace

const std::vector<FreePoly>& bch_series(int weight) {
	static std::mutex mu;
	static std::vector<FreePoly> Z; // Z[0] unused
	std::lock_guard<std::mutex> lock(mu);
	if (Z.empty()) {
		Z.resize(2);
		Z[1] = {{{0}, 1}, {{1}, 1}};
	}
	const FreePoly a_plus_b = Z[1];
	const FreePoly a_minus_b{{{0}, 1}, {{1}, -1}};
	// (n+1) Z_{n+1} = 1/2 [a-b, Z_n]
	//   + sum_{p>=1, 2p<=n} B_{2p}/(2p)! sum_{k_1+..+k_2p=n} [Z_k1,[..,[Z_k2p, a+b]..]]
	while (static_cast<int>(Z.size()) <= weight) {
		const int n = static_cast<int>(Z.size()) - 1;
		FreePoly next = commutator(a_minus_b, Z[n]);
		for (auto& [w, c] : next) c /= 2;
		Rational fact = 1;
		for (int p = 1; 2 * p <= n; ++p) {
			fact *= (2 * p - 1) * (2 * p);
			const Rational K = bernoulli(2 * p) / fact;
			std::vector<int> cur;
			compositions(n, 2 * p, cur, [&](const std::vector<int>& ks) {
				FreePoly t = a_plus_b;
				for (int j = static_cast<int>(ks.size()) - 1; j >= 0; --j) t = commutator(Z[ks[j]], t);
				accumulate(next, t, K);
			});
		}
		for (auto& [w, c] : next) c /= (n + 1);
		Z.push_back(std::move(next));
	}
	return Z;
}

ConvElement bch(const ConvElement& a, const ConvElement& b) {
	if ((a.degree() != 0 && !a.is_zero()) || (b.degree() != 0 && !b.is_zero()))
		throw Error("bch: arguments must have degree 0");
	auto ctx = join_context(a.context(), b.context());
	const ConvElement A = ConvElement(a.context(), 0, a.components());
	const ConvElement B = ConvElement(b.context(), 0, b.components());
	if (A.components().count(1) || B.components().count(1))
		throw Error("bch: arguments must have no arity-1 component");
	const int W = ctx->arity_max - 1;
	const auto& Z = bch_series(W);
	ConvElement r(ctx, 0);
	// Dynkin: a homogeneous Lie polynomial P of weight n equals (1/n) sum_w c_w [..[w_1,w_2],..,w_n].
	std::map<Word, ConvElement> cache;
	std::function<const ConvElement&(const Word&)> left_normed = [&](const Word& w) -> const ConvElement& {
		auto it = cache.find(w);
		if (it != cache.end()) return it->second;
		ConvElement v;
		if (w.size() == 1) {
			v = w[0] == 0 ? A : B;
		} else {
			Word prefix(w.begin(), w.end() - 1);
			const ConvElement& p = left_normed(prefix);
			v = p.is_zero() ? ConvElement(ctx, 0) : bracket(p, w.back() == 0 ? A : B);
		}
		return cache.emplace(w, std::move(v)).first->second;
	};
	for (int n = 1; n <= W; ++n)
		for (auto& [w, c] : Z[n]) {
			const ConvElement& v = left_normed(w);
			if (!v.is_zero()) r += v * (c / n);
		}
	return r.with_context(ctx);
}

ConvElement gauge_act(const ConvElement& a, const ConvElement& x) {
	if (a.degree() != 0 && !a.is_zero()) throw Error("gauge_act: gauge must have degree 0");
	if (x.degree() != -1 && !x.is_zero()) throw Error("gauge_act: target must have degree -1");
	const ConvElement X = ConvElement(x.context(), -1, x.components());
	const ConvElement A = ConvElement(a.context(), 0, a.components());
	if (A.components().count(1)) throw Error("gauge_act: gauge must have no arity-1 component");
	if (!is_mc(X)) throw Error("gauge_act: target is not Maurer-Cartan");
	auto ctx = join_context(X.context(), A.context());
	// exp(a).x = x - sum_{n>=0} ad_a^n (d_x a) / (n+1)!
	ConvElement t = differential(A.with_context(ctx)) + bracket(X, A);
	ConvElement r = X.with_context(ctx);
	Rational fact = 1;
	for (int n = 0; !t.is_zero(); ++n) {
		fact *= (n + 1);
		r -= t * (1 / fact);
		t = bracket(A, t);
	}
	return r.with_context(ctx);
}

int filtration_degree(const ConvElement& f) {
	if (f.is_zero()) return ConvElement::kInfinity;
	return f.components().begin()->first - 1;
}

std::optional<HarrisonWitness> harrison_witness(const MultilinearMap& f) {
	const int n = f.arity();
	for (int p = 1; p < n; ++p) {
		auto g = on_shuffle_products(f, p);
		if (!g.is_zero()) return HarrisonWitness{p, n - p, g.entries().begin()->first};
	}
	return std::nullopt;
}

std::optional<FlavorWitness> flavor_witness(const ConvElement& f) {
	const auto& ctx = *f.context();
	for (auto& [n, m] : f.components()) {
		if (n < 2) continue;
		if (is_strictly_unital(ctx.flavor) && ctx.unit) {
			for (auto& [t, v] : m.entries())
				for (int i : t)
					if (i == *ctx.unit) return FlavorWitness{n, "nonzero on the unit line", t, 0, 0};
		}
		if (is_commutative(ctx.flavor))
			if (auto w = harrison_witness(m)) return FlavorWitness{n, "nonzero on a shuffle product", w->tuple, w->p, w->q};
	}
	return std::nullopt;
}

ConvElement project_to_flavor(const ConvElement& f) {
	const auto& ctx = *f.context();
	ConvElement r(f.context(), f.degree());
	for (auto& [n, m] : f.components()) {
		MultilinearMap g = m;
		if (n >= 2 && is_strictly_unital(ctx.flavor) && ctx.unit) {
			MultilinearMap h(m.space(), n, m.degree(), m.orientation());
			for (auto& [t, v] : m.entries())
				if (std::find(t.begin(), t.end(), *ctx.unit) == t.end()) h.add(t, v);
			g = h;
		}
		if (n >= 2 && is_commutative(ctx.flavor)) g = harrison_projection(g);
		r.add_component(g);
	}
	return r;
}

namespace {

int shift_sign(const Tuple& t, const GradedSpace& V, Orientation o) {
	const int n = static_cast<int>(t.size());
	int parity = o == Orientation::algebra ? ((n - 1) * (n - 2) / 2) & 1 : 0;
	for (int j = 1; j <= n; ++j) {
		const int d = V.degree(t[j - 1]) + (o == Orientation::algebra ? 1 : 0);
		parity ^= ((n - j) & 1) & (d & 1);
	}
	return parity ? -1 : 1;
}

} // namespace

MultilinearMap shift_map(const MultilinearMap& m, const ContextPtr& ctx) {
	if (!same_space(m.space(), ctx->space)) throw Error("shift_map: map is not on the context space");
	const int n = m.arity();
	MultilinearMap r(ctx->shifted, n, m.degree() - n + 1, ctx->orientation);
	for (auto& [t, v] : m.entries()) r.add(t, v, shift_sign(t, *ctx->space, ctx->orientation));
	return r;
}

MultilinearMap unshift_map(const MultilinearMap& m, const ContextPtr& ctx) {
	if (!same_space(m.space(), ctx->shifted)) throw Error("unshift_map: map is not on the shifted space");
	const int n = m.arity();
	MultilinearMap r(ctx->space, n, m.degree() + n - 1, ctx->orientation);
	for (auto& [t, v] : m.entries()) r.add(t, v, shift_sign(t, *ctx->space, ctx->orientation));
	return r;
}

Rational random_rational(std::mt19937_64& rng) {
	static const int nums[] = {-3, -2, -1, 1, 2, 3};
	static const int dens[] = {1, 1, 1, 2, 3};
	return make_rational(nums[rng() % 6], dens[rng() % 5]);
}

ConvElement random_element(const ContextPtr& ctx, int degree, std::mt19937_64& rng, int min_arity, int max_arity,
                           double density) {
	if (max_arity < 0) max_arity = ctx->arity_max;
	// integer coin so that seeds reproduce across standard libraries
	const auto threshold = static_cast<std::uint64_t>(density * 1024);
	ConvElement r(ctx, degree);
	const auto& S = *ctx->shifted;
	for (int n = min_arity; n <= max_arity; ++n) {
		MultilinearMap f(ctx->shifted, n, degree, ctx->orientation);
		for (auto& t : MultilinearMap::all_tuples(S.dim(), n))
			for (int j = 0; j < static_cast<int>(S.dim()); ++j)
				if (f.admissible(t, j) && (rng() & 1023) < threshold) f.add(t, j, random_rational(rng));
		r.add_component(f);
	}
	return project_to_flavor(r);
}

std::ostream& operator<<(std::ostream& os, const ConvElement& f) {
	os << "element(degree " << f.degree() << ", " << to_string(f.context()->flavor) << ")";
	for (auto& [n, m] : f.components()) os << "\n" << m;
	return os;
}

} // namespace cdef
