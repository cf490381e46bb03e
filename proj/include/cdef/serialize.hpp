// JSON documents for spaces, maps and the higher-level objects built on them.
// Rationals are written as "p/q" strings so nothing is lost in transit.
#pragma once

#include "cdef/exactcore.hpp"

#include <json.hpp>

#include <string>

namespace cdef {

using Json = nlohmann::ordered_json;

Json space_to_json(const GradedSpace& s);
GradedSpace space_from_json(const Json& j);

// Entries are listed in tuple order. Algebra orientation:
//   {"in": ["x","y"], "out": [["z","3/2"]]}
// coalgebra orientation (coefficient of the output tuple in f(single)):
//   {"out": ["x","y"], "in": [["z","3/2"]]}
Json map_to_json(const MultilinearMap& f);
MultilinearMap map_from_json(const Json& j, const SpacePtr& space, Orientation o);

// Field access that reports the offending key on failure.
const Json& require(const Json& j, const std::string& key);
std::string json_string(const Json& j, const std::string& what);
int json_int(const Json& j, const std::string& what);
Rational json_rational(const Json& j, const std::string& what);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

// Thrown for unreadable or unwritable files.
struct IoError : Error {
	using Error::Error;
};

} // namespace cdef
