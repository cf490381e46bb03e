// A-infinity / C-infinity (co)algebra structures as Maurer-Cartan elements,
// strict units, isotopies, and the retraction onto the commutative complex.
#pragma once

#include "cdef/convolution.hpp"
#include "cdef/serialize.hpp"

#include <optional>
#include <string>

namespace cdef {

// Raised when an input is not the kind of structure it claims to be. The
// message names the failing check and the offending basis tuple.
struct StructureError : Error {
	using Error::Error;
};

struct InftyStructure {
	ConvElement mc; // degree -1, Maurer-Cartan relative to the context's base differential

	const ContextPtr& context() const { return mc.context(); }
};

// Components f_n, n >= 2, of degree 0 in the shifted encoding; f_1 = id.
struct Isotopy {
	ConvElement f;

	const ContextPtr& context() const { return f.context(); }
	static Isotopy identity(const ContextPtr& ctx) { return Isotopy{ConvElement(ctx, 0)}; }
	bool operator==(const Isotopy& o) const { return f == o.f; }
};

// First failure of a structural identity: which check, and where.
struct CheckFailure {
	std::string check; // "associativity", "commutativity", "leibniz", "square-zero", ...
	Tuple tuple;       // offending input tuple (output tuple for coalgebras)
	std::string describe(const GradedSpace& V) const;
};

// Checks a classical (co)algebra: (co)associativity, graded (co)commutativity
// when `commutative`, d^2 = 0 and the Leibniz rule. Maps are unshifted: the
// product has degree 0 and d degree -1; d may be absent.
std::optional<CheckFailure> check_binary_algebra(const MultilinearMap& product, const MultilinearMap* d,
                                                 bool commutative);

// Structure concentrated in arity 2 on ctx (the differential, if any, must
// already be the context's base differential). Throws StructureError.
InftyStructure from_binary_algebra(const ContextPtr& ctx, const MultilinearMap& product);

// Context whose base differential is the internal differential d (may be null).
ContextPtr context_with_differential(SpacePtr V, Orientation o, Flavor f, int arity_max, const MultilinearMap* d);

// Strictly unital context: mu0 (unit `unit`, product of reduced elements
// zero) installed as base differential.
ContextPtr su_context(SpacePtr V, const std::string& unit, Flavor f, int arity_max,
                      Orientation o = Orientation::algebra);
MultilinearMap unital_mu0(const SpacePtr& V, int unit, Orientation o);

// Componentwise act(transpose(e1_n), -), landing in `target` (the
// commutative counterpart of f's context when omitted).
ConvElement pbw_retraction(const ConvElement& f, const ContextPtr& target = nullptr);
ContextPtr commutative_context(const ContextPtr& ctx);

struct HarrisonFailure {
	int arity = 0, p = 0, q = 0;
	Tuple tuple;
};
std::optional<HarrisonFailure> harrison_check(const ConvElement& f);

// phi_k(psi_{i_1} (x) .. (x) psi_{i_k}) summed, for full families with the
// identity in arity 1; composition of isotopies is the special case.
Isotopy compose(const Isotopy& phi, const Isotopy& psi);
// The exponential sum_k R_a^k(id)/k!, R_a(psi) = psi * a.
Isotopy isotopy_from_gauge(const ConvElement& a);
// Inverse of isotopy_from_gauge, solved arity by arity.
ConvElement gauge_from_isotopy(const Isotopy& phi);
// The unique m' with phi an infinity-isotopy from m to m'.
InftyStructure transport_structure(const Isotopy& phi, const InftyStructure& m);

// JSON documents for elements, structures and isotopies. Components are
// written unshifted (m_2 is the product itself) under "arity_components".
Json element_to_json(const ConvElement& f, const std::string& kind = "element");
struct ElementDoc {
	ConvElement element;
	std::string kind;
};
ElementDoc element_from_json(const Json& j);
Json context_to_json(const ConvContext& ctx);
ContextPtr context_from_json(const Json& j);

} // namespace cdef
