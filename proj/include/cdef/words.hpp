// Symmetric group algebras Q[S_n]: shuffles, Eulerian idempotents, Lyndon
// words, and the place-permutation action on multilinear maps.
#pragma once

#include "cdef/exactcore.hpp"

#include <memory>
#include <string>
#include <vector>

namespace cdef {

// One-line notation, 1-based: p[i-1] = sigma(i).
using Perm = std::vector<int>;

Perm identity_perm(int n);
Perm compose(const Perm& a, const Perm& b); // (a o b)(i) = a(b(i))
Perm inverse(const Perm& p);
int sign(const Perm& p);
std::vector<Perm> all_perms(int n); // lexicographic
std::string format_perm(const Perm& p);
// Disjoint cycles, fixed points omitted, each cycle led by its smallest
// entry: [2,1,4,3] -> "(1 2)(3 4)", the identity -> "()".
std::string format_cycles(const Perm& p);

class GroupAlgebraElement {
public:
	GroupAlgebraElement() = default;
	explicit GroupAlgebraElement(int n) : n_(n) {}
	static GroupAlgebraElement unit(int n);
	static GroupAlgebraElement of(const Perm& p, const Rational& c = 1);

	int n() const { return n_; }
	const std::map<Perm, Rational>& terms() const { return terms_; }
	Rational coeff(const Perm& p) const;
	void add(const Perm& p, const Rational& c);
	bool is_zero() const { return terms_.empty(); }

	GroupAlgebraElement& operator+=(const GroupAlgebraElement& o);
	GroupAlgebraElement operator+(const GroupAlgebraElement& o) const;
	GroupAlgebraElement operator-(const GroupAlgebraElement& o) const;
	GroupAlgebraElement operator*(const Rational& c) const;
	// Product in Q[S_n] induced by composition of permutations.
	GroupAlgebraElement operator*(const GroupAlgebraElement& o) const;
	bool operator==(const GroupAlgebraElement& o) const { return n_ == o.n_ && terms_ == o.terms_; }

private:
	int n_ = 0;
	std::map<Perm, Rational> terms_;
};

GroupAlgebraElement operator*(const Rational& c, const GroupAlgebraElement& a);

// Sum of the (p,q)-shuffles: sigma increasing on {1..p} and on {p+1..p+q}.
GroupAlgebraElement shuffle_sum(int p, int q);

// Convolution of a in Q[S_p] and b in Q[S_q]: sum over (p,q)-shuffles z of
// z o (a x b). This is the product of the corresponding natural operators on
// tensor words (split a word along a shuffle, act, concatenate).
GroupAlgebraElement convolve(const GroupAlgebraElement& a, const GroupAlgebraElement& b);

constexpr int kEulerianMax = 7;

// e^(1)_n .. e^(n)_n from the convolution logarithm of the identity.
std::vector<GroupAlgebraElement> eulerian_idempotents(int n, int max_n = kEulerianMax);

// Rank of x -> x * a on Q[S_n], by exact elimination over Q.
std::size_t right_multiplication_rank(const GroupAlgebraElement& a);

struct BracketTree {
	int letter = 0; // leaf when nonzero
	std::shared_ptr<const BracketTree> left, right;
	std::string str() const;
	// Expansion as a sum of words, a word being written as a permutation.
	GroupAlgebraElement expand(int n) const;
};

struct LyndonBasis {
	int n = 0;
	std::vector<std::vector<int>> words;
	std::vector<std::shared_ptr<const BracketTree>> brackets;
};

LyndonBasis lyndon_basis(int n);

// act(sigma, f)(x_1..x_n) = eps * f(x_sigma(1), .., x_sigma(n)) with the Koszul
// sign eps of the rearrangement, extended linearly. Satisfies
// act(a*b, f) = act(a, act(b, f)). Coalgebra-oriented maps are stored
// transposed, so the same formula postcomposes on their outputs.
MultilinearMap act_on_inputs(const GroupAlgebraElement& a, const MultilinearMap& f);

// sigma -> sigma^{-1}, an anti-automorphism of Q[S_n].
GroupAlgebraElement transpose(const GroupAlgebraElement& a);

// f evaluated on all (p, n-p) shuffle products of its inputs.
MultilinearMap on_shuffle_products(const MultilinearMap& f, int p);

// Idempotent projection onto the maps vanishing on shuffle products:
// act(transpose(e^(1)_n), f). The transpose matters from n = 4 on, since
// e^(1) kills shuffles only from the left.
MultilinearMap harrison_projection(const MultilinearMap& f);
// transpose(e^(1)_n), cached.
const GroupAlgebraElement& harrison_projector(int n);

std::ostream& operator<<(std::ostream& os, const GroupAlgebraElement& a);

} // namespace cdef
