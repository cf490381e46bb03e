#include "cdef/serialize.hpp"

#include <fstream>
#include <sstream>

namespace cdef {

const Json& require(const Json& j, const std::string& key) {
	if (!j.is_object()) throw ParseError("expected an object holding \"" + key + "\"");
	auto it = j.find(key);
	if (it == j.end()) throw ParseError("missing key \"" + key + "\"");
	return *it;
}

std::string json_string(const Json& j, const std::string& what) {
	if (!j.is_string()) throw ParseError("\"" + what + "\" must be a string");
	return j.get<std::string>();
}

int json_int(const Json& j, const std::string& what) {
	if (!j.is_number_integer()) throw ParseError("\"" + what + "\" must be an integer");
	return j.get<int>();
}

Rational json_rational(const Json& j, const std::string& what) {
	if (j.is_number_integer()) return Rational(j.get<long>());
	if (!j.is_string()) throw ParseError("\"" + what + "\" must be a rational string");
	try {
		return parse_rational(j.get<std::string>());
	} catch (const ParseError& e) {
		throw ParseError("\"" + what + "\": " + e.what());
	}
}

Json space_to_json(const GradedSpace& s) {
	Json b = Json::array();
	for (std::size_t i = 0; i < s.dim(); ++i) b.push_back(Json::array({s.name(i), s.degree(i)}));
	return Json{{"basis", b}};
}

GradedSpace space_from_json(const Json& j) {
	const Json& b = require(j, "basis");
	if (!b.is_array()) throw ParseError("\"basis\" must be an array");
	std::vector<std::pair<std::string, int>> out;
	for (auto& e : b) {
		if (!e.is_array() || e.size() != 2) throw ParseError("\"basis\" entries must be [name, degree]");
		out.emplace_back(json_string(e[0], "basis"), json_int(e[1], "basis"));
	}
	try {
		return GradedSpace(std::move(out));
	} catch (const ParseError&) {
		throw;
	} catch (const Error& e) {
		throw ParseError(std::string("\"basis\": ") + e.what());
	}
}

Json map_to_json(const MultilinearMap& f) {
	const auto& s = *f.space();
	const bool alg = f.orientation() == Orientation::algebra;
	Json entries = Json::array();
	for (auto& [t, v] : f.entries()) {
		Json tuple = Json::array();
		for (int i : t) tuple.push_back(s.name(i));
		Json single = Json::array();
		for (auto& [j, c] : v) single.push_back(Json::array({s.name(j), format_rational(c)}));
		entries.push_back(alg ? Json{{"in", tuple}, {"out", single}} : Json{{"out", tuple}, {"in", single}});
	}
	Json j{{"arity", f.arity()}, {"degree", f.degree()}};
	if (!alg) j["orientation"] = "coalgebra";
	j["entries"] = entries;
	return j;
}

MultilinearMap map_from_json(const Json& j, const SpacePtr& space, Orientation o) {
	const int arity = json_int(require(j, "arity"), "arity");
	const int degree = json_int(require(j, "degree"), "degree");
	if (arity < 1) throw ParseError("\"arity\" must be positive");
	if (auto it = j.find("orientation"); it != j.end() && parse_orientation(json_string(*it, "orientation")) != o)
		throw ParseError("\"orientation\" does not match the context");
	const bool alg = o == Orientation::algebra;
	const std::string tkey = alg ? "in" : "out", skey = alg ? "out" : "in";
	MultilinearMap f(space, arity, degree, o);
	const Json& entries = require(j, "entries");
	if (!entries.is_array()) throw ParseError("\"entries\" must be an array");
	for (auto& e : entries) {
		const Json& tj = require(e, tkey);
		if (!tj.is_array() || static_cast<int>(tj.size()) != arity)
			throw ParseError("\"" + tkey + "\" must list " + std::to_string(arity) + " basis names");
		Tuple t;
		for (auto& n : tj) {
			auto idx = space->find(json_string(n, tkey));
			if (!idx) throw ParseError("\"" + tkey + "\": unknown basis name \"" + n.get<std::string>() + "\"");
			t.push_back(*idx);
		}
		const Json& sj = require(e, skey);
		if (!sj.is_array()) throw ParseError("\"" + skey + "\" must be an array");
		for (auto& term : sj) {
			if (!term.is_array() || term.size() != 2) throw ParseError("\"" + skey + "\" terms must be [name, coeff]");
			auto idx = space->find(json_string(term[0], skey));
			if (!idx) throw ParseError("\"" + skey + "\": unknown basis name \"" + term[0].get<std::string>() + "\"");
			Rational c = json_rational(term[1], skey);
			if (!f.admissible(t, *idx) && c != 0)
				throw ParseError("\"entries\": term violates the degree constraint");
			f.add(t, *idx, c);
		}
	}
	return f;
}

Json read_json_file(const std::string& path) {
	std::ifstream in(path);
	if (!in) throw IoError("cannot read " + path);
	std::stringstream ss;
	ss << in.rdbuf();
	try {
		return Json::parse(ss.str());
	} catch (const Json::parse_error& e) {
		throw ParseError(path + ": " + e.what());
	}
}

void write_json_file(const std::string& path, const Json& j) {
	std::ofstream out(path);
	if (!out) throw IoError("cannot write " + path);
	out << j.dump(2) << "\n";
	if (!out) throw IoError("write failed for " + path);
}

} // namespace cdef
