#include "cdef/rectify.hpp"

#include <random>
#include <sstream>

namespace cdef {

namespace {

int first_arity(const ConvElement& f) { return f.is_zero() ? 0 : f.components().begin()->first; }

std::string fd_string(int fd) { return fd == ConvElement::kInfinity ? "inf" : std::to_string(fd); }

} // namespace

RetractionSetup RetractionSetup::make(const ContextPtr& big, const ContextPtr& small, bool verify) {
	if (!big->same_ambient(*small)) throw RectifyError("retraction setup: contexts differ in space, orientation or truncation", 0);
	if (is_commutative(big->flavor) || small->flavor != commutative_counterpart(big->flavor))
		throw RectifyError("retraction setup: need an associative context and its commutative counterpart", 0);
	RetractionSetup s{big, small};
	if (!verify) return s;
	std::mt19937_64 rng(0x5eed);
	const int hi = std::min(big->arity_max, 4);
	for (int trial = 0; trial < 2; ++trial) {
		auto x = random_element(big, static_cast<int>(rng() % 2) - 1, rng, 2, hi, 0.1);
		auto c = random_element(small, static_cast<int>(rng() % 2) - 1, rng, 2, hi, 0.1);
		if (!(s.retract(c.with_context(big)) == c)) throw RectifyError("retraction is not the identity on the small algebra", 0);
		if (!(s.retract(bracket(x, c.with_context(big))) == bracket(s.retract(x), c)))
			throw RectifyError("retraction is not a module map", 0);
		if (filtration_degree(s.retract(x)) < filtration_degree(x))
			throw RectifyError("retraction lowers the filtration", 0);
	}
	return s;
}

RetractionSetup RetractionSetup::for_context(const ContextPtr& ctx, bool verify) {
	auto big = is_commutative(ctx->flavor) ? ctx->with_flavor(associative_counterpart(ctx->flavor)) : ctx;
	return make(big, commutative_context(big), verify);
}

RetractionSetup RetractionSetup::twisted(const ConvElement& y) const {
	auto b = twist(big, y.with_context(big));
	auto s = small->with_delta(b->delta);
	return RetractionSetup{b, s};
}

std::string DescentTrace::format() const {
	std::ostringstream os;
	for (auto& st : steps)
		os << "iteration " << st.n << ": fd(s(a_n)) = " << fd_string(st.fd_s) << ", fd(x_n) = " << fd_string(st.fd_x)
		   << ", fd(d a_n) = " << fd_string(st.fd_da) << ", x_n terms = " << st.x_terms << "\n";
	return os.str();
}

ConvElement gauge_descend(const RetractionSetup& setup, const ConvElement& x0, const ConvElement& a0,
                          DescentTrace* trace) {
	const auto& small = setup.small;
	const auto& big = setup.big;
	ConvElement x = ConvElement(small, -1, x0.components());
	ConvElement a = ConvElement(big, 0, a0.components());
	if (auto w = flavor_witness(x)) throw RectifyError("x is not in the small algebra: " + w->reason, w->arity);
	if (auto d = mc_defect(x); !d.is_zero()) throw RectifyError("x is not Maurer-Cartan", first_arity(d));
	if (auto r = gauge_act(a, x.with_context(big)); !r.is_zero())
		throw RectifyError("a does not gauge x to 0", first_arity(r));

	ConvElement g(small, 0);
	const int cap = small->arity_max;
	for (int n = 1; !x.is_zero(); ++n) {
		if (n > cap) throw RectifyError("gauge descent did not terminate", n);
		ConvElement s = setup.retract(a);
		DescentStep st{n, filtration_degree(s), filtration_degree(x), filtration_degree(differential(a)),
		               0};
		for (auto& [k, m] : x.components()) st.x_terms += m.size();
		if (trace) trace->steps.push_back(st);
		if (st.fd_s < n) throw RectifyError("invariant fd(s(a_n)) >= n fails at iteration " + std::to_string(n), n + 1);
		if (st.fd_x < n) throw RectifyError("invariant fd(x_n) >= n fails at iteration " + std::to_string(n), n + 1);
		if (st.fd_da < n) throw RectifyError("invariant fd(d a_n) >= n fails at iteration " + std::to_string(n), n + 1);
		x = gauge_act(s, x);
		a = bch(a, -s.with_context(big));
		g = bch(s, g);
	}
	if (!gauge_act(g, x0.with_context(small)).is_zero()) throw RectifyError("descent output does not gauge x to 0", 0);
	return g;
}

ConvElement rectify_pair(const RetractionSetup& setup, const ConvElement& x, const ConvElement& y,
                         const ConvElement& a, DescentTrace* trace) {
	const ConvElement X(setup.small, -1, x.components()), Y(setup.small, -1, y.components());
	for (auto* e : {&X, &Y}) {
		if (auto w = flavor_witness(*e)) throw RectifyError("structure is not in the small algebra: " + w->reason, w->arity);
		if (auto d = mc_defect(*e); !d.is_zero()) throw RectifyError("structure is not Maurer-Cartan", first_arity(d));
	}
	const ConvElement A(setup.big, 0, a.components());
	if (auto r = gauge_act(A, X.with_context(setup.big)) - Y.with_context(setup.big); !r.is_zero())
		throw RectifyError("a does not gauge x to y", first_arity(r));
	auto tw = setup.twisted(Y);
	auto g = gauge_descend(tw, (X - Y).with_context(tw.small), A.with_context(tw.big), trace);
	auto out = g.with_context(setup.small);
	if (!(gauge_act(out, X) == Y)) throw RectifyError("rectified gauge does not send x to y", 0);
	return out;
}

Isotopy theorem_a_driver(const InftyStructure& m, const InftyStructure& m2, const Isotopy& phi, DescentTrace* trace) {
	auto setup = RetractionSetup::for_context(m.context());
	const InftyStructure M{ConvElement(setup.big, -1, m.mc.components())};
	const InftyStructure M2{ConvElement(setup.big, -1, m2.mc.components())};
	const Isotopy Phi{ConvElement(setup.big, 0, phi.f.components())};
	if (auto r = transport_structure(Phi, M).mc - M2.mc; !r.is_zero())
		throw RectifyError("phi is not an isotopy from m to m2", first_arity(r));
	auto a = gauge_from_isotopy(Phi);
	auto g = rectify_pair(setup, M.mc, M2.mc, a, trace);
	auto psi = isotopy_from_gauge(g);
	if (auto h = harrison_check(psi.f)) throw RectifyError("rectified isotopy is not commutative", h->arity);
	if (!(transport_structure(psi, InftyStructure{m.mc.with_context(setup.small)}).mc == m2.mc.with_context(setup.small)))
		throw RectifyError("rectified isotopy does not transport m to m2", 0);
	return psi;
}

} // namespace cdef
