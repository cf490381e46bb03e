// Exact rationals, graded spaces, Koszul signs and sparse multilinear maps.
#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cdef {

using Rational = mpq_class;

// Thrown for violated preconditions (arity mismatch, bad slot, ...).
struct Error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

// Thrown for malformed input documents.
struct ParseError : Error {
	using Error::Error;
};

std::string format_rational(const Rational& q);
Rational parse_rational(const std::string& s);
// num/den in lowest terms (mpq_class does not canonicalize on construction).
Rational make_rational(long num, long den);

class GradedSpace {
public:
	GradedSpace() = default;
	explicit GradedSpace(std::vector<std::pair<std::string, int>> basis);

	std::size_t dim() const { return names_.size(); }
	const std::string& name(int i) const { return names_.at(i); }
	int degree(int i) const { return degrees_.at(i); }
	const std::vector<int>& degrees() const { return degrees_; }
	std::optional<int> find(const std::string& name) const;
	int index(const std::string& name) const; // throws Error if absent

	// Same names, every degree moved by k.
	GradedSpace shifted(int k) const;

	bool operator==(const GradedSpace& o) const {
		return names_ == o.names_ && degrees_ == o.degrees_;
	}

private:
	std::vector<std::string> names_;
	std::vector<int> degrees_;
	std::unordered_map<std::string, int> index_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

inline SpacePtr make_space(std::vector<std::pair<std::string, int>> basis) {
	return std::make_shared<const GradedSpace>(std::move(basis));
}
inline SpacePtr make_space(GradedSpace s) { return std::make_shared<const GradedSpace>(std::move(s)); }

bool same_space(const SpacePtr& a, const SpacePtr& b);

using Coords = std::map<int, Rational>;
using Tuple = std::vector<int>;

void add_to(Coords& v, int i, const Rational& c);
void add_to(Coords& v, const Coords& w, const Rational& c = 1);
bool is_zero(const Coords& v);

struct Vector {
	SpacePtr space;
	Coords coords;

	static Vector basis(SpacePtr space, int i);
	bool is_zero() const { return coords.empty(); }
	Vector& operator+=(const Vector& o);
	Vector operator+(const Vector& o) const;
	Vector operator*(const Rational& c) const;
	bool operator==(const Vector& o) const { return coords == o.coords; }
};

// Sign picked up when factor i of v_1 (x) ... (x) v_n moves to position perm[i]
// (perm is one-line, 1-based). Product of (-1)^{d_i d_j} over inverted pairs.
int koszul_sign(const std::vector<int>& perm, const std::vector<int>& degrees);

enum class Orientation { algebra, coalgebra };

const char* to_string(Orientation o);
Orientation parse_orientation(const std::string& s);

// A sparse map between V^{(x)n} and V. Entries are keyed by the n-tuple side.
// In algebra orientation an entry t -> v means f(e_t) = v. In coalgebra
// orientation the map V -> V^{(x)n} is stored transposed: an entry t -> v means
// the coefficient of e_t in f(e_j) is v[j]. Composition and the symmetric
// group action then use a single code path for both orientations.
class MultilinearMap {
public:
	MultilinearMap() = default;
	MultilinearMap(SpacePtr space, int arity, int degree, Orientation o = Orientation::algebra);

	static MultilinearMap identity(SpacePtr space, Orientation o = Orientation::algebra);

	int arity() const { return arity_; }
	int degree() const { return degree_; }
	Orientation orientation() const { return orientation_; }
	const SpacePtr& space() const { return space_; }
	const std::map<Tuple, Coords>& entries() const { return entries_; }

	// Degree the single side must have for a given tuple side.
	int single_degree(const Tuple& t) const;
	bool admissible(const Tuple& t, int single) const;

	// Adds c to the coefficient of (t, single). Throws Error if the pair
	// violates the degree constraint and c is nonzero.
	void add(const Tuple& t, int single, const Rational& c);
	void add(const Tuple& t, const Coords& v, const Rational& c = 1);
	Rational coeff(const Tuple& t, int single) const;

	bool is_zero() const { return entries_.empty(); }
	std::size_t size() const;

	MultilinearMap& operator+=(const MultilinearMap& o);
	MultilinearMap& operator-=(const MultilinearMap& o);
	MultilinearMap& operator*=(const Rational& c);
	MultilinearMap operator+(const MultilinearMap& o) const;
	MultilinearMap operator-(const MultilinearMap& o) const;
	MultilinearMap operator-() const;
	MultilinearMap operator*(const Rational& c) const;
	bool operator==(const MultilinearMap& o) const;

	// Every n-tuple of basis indices, lexicographic.
	static std::vector<Tuple> all_tuples(std::size_t dim, int n);

private:
	void check_compatible(const MultilinearMap& o) const;

	SpacePtr space_;
	int arity_ = 1;
	int degree_ = 0;
	Orientation orientation_ = Orientation::algebra;
	std::map<Tuple, Coords> entries_;
};

// (f o_i g)(x_1..x_{p+q-1}) = (-1)^{|g|(|x_1|+..+|x_{i-1}|)} f(x_1,..,g(x_i..),..).
// In coalgebra orientation this is g applied to the i-th output of f.
MultilinearMap compose_at(const MultilinearMap& f, const MultilinearMap& g, int i);

// Multilinear evaluation; algebra orientation only.
Vector apply(const MultilinearMap& f, const std::vector<Vector>& args);

// Coalgebra orientation: f(v) as a combination of output tuples.
std::map<Tuple, Rational> coapply(const MultilinearMap& f, const Vector& v);

// Readable dump: one "(names) -> coeff name" line per entry.
std::ostream& operator<<(std::ostream& os, const MultilinearMap& f);

} // namespace cdef
