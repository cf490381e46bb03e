// Structure-constant dg Lie algebras and the classical constructions around
// them, all truncated by a weight grading: enveloping algebras, lower central
// series, Chevalley-Eilenberg chains, bar and cobar constructions, and the
// bar-cobar resolution with its two filtrations.
#pragma once

#include "cdef/homology.hpp"
#include "cdef/serialize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cdef {

struct LieError : Error {
	using Error::Error;
};

using Word = std::vector<int>;

// Bracket of degree 0 and differential of degree -1 on a graded space, plus
// a weight per basis vector that both respect.
class FiniteDgLie {
public:
	// Checks antisymmetry, Jacobi, d^2 = 0 and Leibniz exactly. Without
	// explicit weights, tries all-ones and then the lower-central-series depth.
	static FiniteDgLie make(SpacePtr space, MultilinearMap bracket, std::optional<MultilinearMap> d = std::nullopt,
	                        std::optional<std::vector<int>> weights = std::nullopt);

	const SpacePtr& space() const { return space_; }
	std::size_t dim() const { return space_->dim(); }
	int degree(int i) const { return space_->degree(i); }
	int weight(int i) const { return weights_.at(i); }
	const std::vector<int>& weights() const { return weights_; }
	const MultilinearMap& bracket_map() const { return bracket_; }
	const MultilinearMap& differential_map() const { return d_; }

	const Coords& bracket(int i, int j) const;
	Coords bracket(const Coords& a, const Coords& b) const;
	const Coords& diff(int i) const;
	Coords diff(const Coords& a) const;

	bool is_abelian() const { return bracket_.is_zero(); }
	ChainComplex complex() const;

private:
	SpacePtr space_;
	MultilinearMap bracket_, d_;
	std::vector<int> weights_;
	std::map<std::pair<int, int>, Coords> table_;
	std::vector<Coords> dtable_;
};

// Basis-indexed associative algebra truncated above weight_max. `words`
// records each basis element as a word in the generators it was built from
// (PBW monomials for enveloping algebras, tensor words for cobar).
struct WeightAlgebra {
	std::vector<std::string> names;
	std::vector<int> degree, weight;
	std::vector<Word> words;
	int weight_max = 0;
	std::optional<int> unit;
	std::map<std::pair<int, int>, SparseVec> mult; // absent pairs multiply to 0
	std::vector<SparseVec> d;
	std::optional<SparseVec> augmentation; // values on basis elements

	std::size_t size() const { return names.size(); }
	SparseVec multiply(const SparseVec& a, const SparseVec& b) const;
	SparseVec differential(const SparseVec& a) const;
	std::optional<int> find_word(const Word& w) const;
	// Associativity, Leibniz, d^2 = 0 and the augmentation; first failure.
	std::optional<std::string> defect() const;
	// Basis indices of positive weight.
	std::vector<int> augmentation_ideal() const;
	ChainComplex complex() const;
	std::map<int, std::size_t> weight_dims() const;
};

// Basis-indexed coalgebra with reduced coproduct: coproduct[i] lists
// (left, right) -> coefficient.
struct WeightCoalgebra {
	std::vector<std::string> names;
	std::vector<int> degree, weight;
	std::vector<Word> words;
	int weight_max = 0;
	std::vector<std::map<std::pair<int, int>, Rational>> coproduct;
	std::vector<SparseVec> d;
	bool cocommutative = false;

	std::size_t size() const { return names.size(); }
	std::optional<std::string> defect() const; // coassociativity, cocommutativity, coderivation, d^2
	ChainComplex complex() const;
};

// PBW monomials of weight <= W, products by straightening, unit and
// augmentation killing g.
WeightAlgebra uea(const FiniteDgLie& g, int W);

struct LcsResult {
	std::vector<std::vector<SparseVec>> terms; // L^1, L^2, ... until zero (inclusive)
	std::optional<int> nilpotency_class;
};
LcsResult lcs(const FiniteDgLie& g, int max_steps = 16);
// L^p equals the span of the basis vectors of weight >= p for every p.
bool weights_follow_lcs(const FiniteDgLie& g);

// Operadic filtration F^n: n-fold brackets (Lie) or n-fold products of the
// augmentation ideal (associative), as reduced spanning sets.
std::vector<SparseVec> operadic_filtration(const FiniteDgLie& g, int n);
std::vector<SparseVec> operadic_filtration(const WeightAlgebra& A, int n);

// alpha(x) = x - eps_bar(x) 1 on generators, extended multiplicatively.
struct AugmentationFix {
	std::vector<SparseVec> alpha; // image of every basis element of U
	int checked_monomials = 0;
};
// eps_bar: values on the basis of g. Throws LieError if eps_bar is not an
// algebra map or if any of eps = eps_bar o alpha, multiplicativity or the
// associated-graded identity fails.
AugmentationFix fix_augmentation(const FiniteDgLie& g, const WeightAlgebra& U, const std::vector<Rational>& eps_bar,
                                 int check_weight = 3);

// Reduced Chevalley-Eilenberg coalgebra: graded-symmetric words in sg of
// weight <= W with the unshuffle coproduct.
WeightCoalgebra ce_chains(const FiniteDgLie& g, int W);
// Reduced bar construction on the augmentation ideal of A.
WeightCoalgebra bar(const WeightAlgebra& A, int W);

// Tensor algebra on the desuspended coalgebra with the cobar differential.
// With `with_unit` the empty word is added (the augmented algebra (Omega C)+).
WeightAlgebra cobar(const WeightCoalgebra& C, int W, bool with_unit = false);

// Free Lie algebra on the desuspended coalgebra, realized inside the cobar
// algebra as the span of iterated brackets of generators.
struct LieCobar {
	WeightAlgebra ambient;         // cobar(C, W)
	FiniteDgLie lie;               // structure constants on the chosen basis
	std::vector<SparseVec> embed;  // basis element -> ambient coordinates
	std::vector<int> length;       // number of generators (G-level)
	std::vector<int> letters;      // total number of letters of C inside
	std::vector<std::pair<int, int>> tree; // (generator, rest) or (-1 - generator, -1) for leaves
	bool completed = true;         // at fixed weight the completion changes nothing
};

enum class CobarFlavor { associative, lie };
// Associative flavor: the tensor algebra. Lie flavor: LieCobar::ambient with
// `lie` populated; throws LieError unless C is cocommutative.
LieCobar cobar_complete(const WeightCoalgebra& C, int W, CobarFlavor flavor);

// Q g = L C g with F (weight in g, which follows the lower central series)
// and G (bracket length) filtrations and the counit Q g -> g.
struct CompletionModel {
	WeightCoalgebra ce;
	LieCobar q;
	ChainComplex source, target;
	std::vector<int> F, G, target_F;
	std::vector<SparseVec> counit;
	ChainMap counit_map() const { return ChainMap{&source, &target, counit}; }
};
CompletionModel homotopy_completion_model(const FiniteDgLie& g, int W);

// Per (degree, level) bounds showing the two filtrations are commensurable.
struct CommensurabilityWitness {
	struct Row {
		int degree = 0, level = 0;
		int observed = 0, bound = 0;
	};
	std::vector<Row> g_inside_f; // max G-level within Gr_F^p, bound p
	std::vector<Row> f_inside_g; // max F-level within Gr_G^p, bound from the degree
	bool holds() const;
};
CommensurabilityWitness commensurability(const CompletionModel& m, const FiniteDgLie& g);

// Every basis element of Q g in degree k has G-level <= -k (so k < 0).
struct NilpotenceWitness {
	std::map<int, int> max_level_by_degree;
	bool holds = false;
};
NilpotenceWitness degreewise_nilpotence(const CompletionModel& m);

// (Omega C)+ -> U(L C): generators to generators; checks that it is an
// algebra isomorphism compatible with differentials within weight W.
struct CobarUeaComparison {
	bool algebra_map = false, chain_map = false, bijective = false;
	std::map<int, std::size_t> dims_omega, dims_u;
	bool holds() const { return algebra_map && chain_map && bijective; }
};
CobarUeaComparison compare_cobar_with_uea(const WeightCoalgebra& C, int W);

// Fixture Lie algebras.
FiniteDgLie abelian_lie(int dim = 1);
FiniteDgLie heisenberg_lie();
FiniteDgLie free_nilpotent_class2();  // generators a, b and c = [a, b]
FiniteDgLie negative_graded_lie();    // a in degree -1, b = [a, a] in degree -2
// Augmentation ideal of Q[x]/(x^{top+1}), x of weight 1; also Q[x] cut at weight top.
WeightAlgebra truncated_polynomial(int top = 2);

Json lie_to_json(const FiniteDgLie& g);
FiniteDgLie lie_from_json(const Json& j);

} // namespace cdef
