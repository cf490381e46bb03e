// cdef: command-line front end. Every subcommand builds a JSON report and a
// short text summary; --format picks which goes to stdout and --out DIR
// also writes the report and any produced files there.
//
// Exit codes: 0 pass, 1 precondition failure, 2 property violation, 3 I/O
// or malformed input.

#include "cdef/acceptance.hpp"
#include "cdef/fixtures.hpp"
#include "cdef/pipeline.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

using namespace cdef;

namespace {

enum Exit { kPass = 0, kPrecondition = 1, kViolation = 2, kIo = 3 };

const char* status_name(int code) {
	switch (code) {
	case kPass: return "pass";
	case kPrecondition: return "precondition-failure";
	case kViolation: return "property-violation";
	default: return "io-error";
	}
}

struct RunConfig {
	int arity_max = 4, weight_max = 4;
	std::uint64_t seed = 0;
	bool trace = false;
	std::string out, format = "text";
};

struct Report {
	std::string command;
	Json json = Json::object();
	std::ostringstream text;
	int status = kPass;
	std::vector<std::pair<std::string, Json>> files; // written under --out
};

// Raised for inputs that are well formed but violate a precondition that the
// library does not check itself.
struct Precondition : Error {
	using Error::Error;
};

Json load(const std::string& path) {
	return read_json_file(path); // IoError or ParseError, path included
}

// Runs a parser on a file, prefixing parse errors with the path.
template <class F>
auto parse_file(const std::string& path, F parse) {
	const Json j = load(path);
	try {
		return parse(j);
	} catch (const ParseError& e) {
		throw ParseError(path + ": " + e.what());
	}
}

ConvElement load_element(const std::string& path, std::string* kind = nullptr) {
	auto doc = parse_file(path, [](const Json& j) { return element_from_json(j); });
	if (kind) *kind = doc.kind;
	return doc.element;
}

FiniteDgLie load_lie(const std::string& path) {
	return parse_file(path, [](const Json& j) { return lie_from_json(j); });
}

// The same element in the context cut at arity n.
ConvElement retruncate(const ConvElement& e, int n) {
	if (n > e.context()->arity_max)
		throw Precondition("--arity-max exceeds the truncation of the input (" + std::to_string(e.context()->arity_max) + ")");
	ConvElement r(e.context()->with_arity_max(n), e.degree());
	for (auto& [k, f] : e.components())
		if (k <= n) r.set_component(f);
	return r;
}

std::string tuple_names(const Tuple& t, const GradedSpace& V) {
	std::string s = "(";
	for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + V.name(t[i]);
	return s + ")";
}

Json sparse_to_json(const SparseVec& v, const std::vector<std::string>& names) {
	Json j = Json::object();
	for (auto& [i, q] : v) j[names[i]] = format_rational(q);
	return j;
}

std::string sparse_to_text(const SparseVec& v, const std::vector<std::string>& names) {
	if (v.empty()) return "0";
	std::string s;
	for (auto& [i, q] : v) s += (s.empty() ? "" : " + ") + format_rational(q) + " " + names[i];
	return s;
}

Json bigraded_to_json(const std::map<Bigrade, std::size_t>& h, bool skip_zero = true) {
	Json j = Json::array();
	for (auto& [b, n] : h)
		if (n || !skip_zero) j.push_back({{"degree", b.first}, {"weight", b.second}, {"dim", n}});
	return j;
}

std::string bigraded_to_text(const std::map<Bigrade, std::size_t>& h) {
	std::string s;
	for (auto& [b, n] : h)
		if (n) s += "  degree " + std::to_string(b.first) + ", weight " + std::to_string(b.second) + ": " + std::to_string(n) + "\n";
	return s.empty() ? "  (zero)\n" : s;
}

Json weight_dims_json(const std::map<int, std::size_t>& d) {
	Json j = Json::object();
	for (auto& [w, n] : d) j[std::to_string(w)] = n;
	return j;
}

Json report_levels(const FilteredQiReport& rep) {
	Json j = Json::array();
	for (auto& l : rep.levels)
		j.push_back({{"p", l.p},
		             {"pass", l.pass},
		             {"detail", l.detail},
		             {"source_homology", bigraded_to_json(l.src_homology)},
		             {"target_homology", bigraded_to_json(l.dst_homology)}});
	return j;
}

void write_outputs(const Report& r, const RunConfig& cfg) {
	if (cfg.out.empty()) return;
	// fixture directories hold only the fixtures
	const bool report = r.command != "fixtures-generate";
	namespace fs = std::filesystem;
	std::error_code ec;
	fs::create_directories(cfg.out, ec);
	if (ec) throw IoError("cannot create " + cfg.out + ": " + ec.message());
	if (report) write_json_file((fs::path(cfg.out) / (r.command + "-report.json")).string(), r.json);
	for (auto& [name, j] : r.files) write_json_file((fs::path(cfg.out) / name).string(), j);
}

void emit(Report& r, const RunConfig& cfg) {
	Json head;
	head["command"] = r.command;
	head["status"] = status_name(r.status);
	head["exit_code"] = r.status;
	for (auto& [k, v] : r.json.items()) head[k] = v;
	r.json = std::move(head);
	write_outputs(r, cfg);
	if (cfg.format == "json")
		std::cout << r.json.dump(2) << "\n";
	else
		std::cout << r.text.str();
}

int fail(const std::string& command, int code, const std::string& msg, const RunConfig& cfg) {
	Report r;
	r.command = command;
	r.status = code;
	r.json["error"] = msg;
	r.text << "error: " << msg << "\n";
	if (cfg.format == "json") {
		emit(r, cfg);
	} else {
		std::cerr << r.text.str();
		try {
			r.json = Json{{"command", command}, {"status", status_name(code)}, {"exit_code", code}, {"error", msg}};
			write_outputs(r, cfg);
		} catch (const std::exception&) {
		}
	}
	return code;
}

// ------------------------------------------------------------- subcommands

void cmd_eulerian(Report& r, int n, int k) {
	if (n < 1 || n > kEulerianMax) throw Precondition("--n must be between 1 and " + std::to_string(kEulerianMax));
	if (k < 1 || k > n) throw Precondition("--k must be between 1 and n");
	const auto e = eulerian_idempotents(n)[k - 1];
	r.json["n"] = n;
	r.json["k"] = k;
	r.json["terms"] = Json::array();
	for (auto& [p, c] : e.terms()) {
		r.json["terms"].push_back({format_perm(p), format_rational(c)});
		r.text << format_rational(c) << " * " << format_cycles(p) << "\n";
	}
}

void cmd_mc_check(Report& r, const std::string& file) {
	const auto x = load_element(file);
	if (x.degree() != -1) throw Precondition(file + ": a structure has degree -1, not " + std::to_string(x.degree()));
	const auto& V = *x.context()->space;
	const auto defect = mc_defect(x);
	const auto fw = flavor_witness(x);
	r.json["flavor"] = to_string(x.context()->flavor);
	r.json["flavor_ok"] = !fw;
	if (defect.is_zero()) {
		r.json["mc"] = true;
		r.text << "Maurer-Cartan: yes (arity <= " << x.context()->arity_max << ")\n";
	} else {
		r.status = kViolation;
		auto& [n, comp] = *defect.components().begin();
		auto& [t, coords] = *comp.entries().begin();
		r.json["mc"] = false;
		r.json["first_arity"] = n;
		r.json["witness_tuple"] = tuple_names(t, V);
		r.text << "Maurer-Cartan: no; first defect in arity " << n << " at " << tuple_names(t, V) << "\n";
		(void)coords;
	}
	if (fw) {
		r.json["flavor_witness"] = {{"arity", fw->arity}, {"reason", fw->reason}, {"tuple", tuple_names(fw->tuple, V)}};
		r.text << "flavor " << to_string(x.context()->flavor) << " violated in arity " << fw->arity << ": " << fw->reason
		       << "\n";
		r.status = kViolation;
	}
}

void cmd_gauge_act(Report& r, const std::string& gfile, const std::string& xfile) {
	const auto a = load_element(gfile), x = load_element(xfile);
	if (a.degree() != 0) throw Precondition(gfile + ": a gauge has degree 0");
	if (!is_mc(x)) throw Precondition(xfile + ": not a Maurer-Cartan element");
	const auto y = gauge_act(a, x);
	if (!is_mc(y)) {
		r.status = kViolation;
		r.text << "gauge action left the Maurer-Cartan locus\n";
	}
	r.json["result"] = element_to_json(y, "structure");
	r.files.emplace_back("gauge-act.json", element_to_json(y, "structure"));
	r.text << "exp(a).x computed: " << y.components().size() << " nonzero arity component(s)\n";
}

void cmd_bch(Report& r, const std::string& afile, const std::string& bfile, std::optional<int> N) {
	auto a = load_element(afile), b = load_element(bfile);
	if (N) {
		if (*N < 2) throw Precondition("--arity-max must be at least 2");
		a = retruncate(a, *N);
		b = retruncate(b, *N);
	}
	const auto c = bch(a, b);
	r.json["result"] = element_to_json(c, "gauge");
	r.files.emplace_back("bch.json", element_to_json(c, "gauge"));
	r.text << "bch(a, b) computed to arity " << c.context()->arity_max << ": " << c.components().size()
	       << " nonzero arity component(s)\n";
}

void cmd_harrison_check(Report& r, const std::string& file) {
	const auto f = load_element(file);
	const auto w = harrison_check(f);
	r.json["commutative"] = !w;
	if (!w) {
		r.text << "vanishes on shuffle products in every arity\n";
		return;
	}
	r.status = kViolation;
	const auto& V = *f.context()->space;
	r.json["witness"] = {{"arity", w->arity}, {"p", w->p}, {"q", w->q}, {"tuple", tuple_names(w->tuple, V)}};
	r.text << "fails on (" << w->p << "," << w->q << ") shuffle products in arity " << w->arity << " at "
	       << tuple_names(w->tuple, V) << "\n";
}

void cmd_retract(Report& r, const std::string& file) {
	std::string kind;
	const auto f = load_element(file, &kind);
	const auto s = pbw_retraction(f);
	if (harrison_check(s)) {
		r.status = kViolation;
		r.text << "retraction output is not commutative\n";
	}
	r.json["result"] = element_to_json(s, kind);
	r.files.emplace_back("retract.json", element_to_json(s, kind));
	r.text << "retracted into the " << to_string(s.context()->flavor) << " complex: " << s.components().size()
	       << " nonzero arity component(s)\n";
}

void cmd_transport(Report& r, const std::string& ifile, const std::string& sfile) {
	std::string kind;
	const auto f = load_element(ifile, &kind);
	if (kind != "isotopy") throw Precondition(ifile + ": \"kind\" must be \"isotopy\"");
	if (f.degree() != 0) throw Precondition(ifile + ": an isotopy has degree 0");
	const InftyStructure m{load_element(sfile)};
	if (!is_mc(m.mc)) throw Precondition(sfile + ": not a Maurer-Cartan element");
	const auto m2 = transport_structure(Isotopy{f}, m);
	r.json["result"] = element_to_json(m2.mc, "structure");
	r.files.emplace_back("transport.json", element_to_json(m2.mc, "structure"));
	r.text << "transported structure: " << m2.mc.components().size() << " nonzero arity component(s)\n";
}

void cmd_rectify(Report& r, const std::vector<std::string>& structures, const std::string& iso_file,
                 std::optional<int> N, bool trace) {
	if (structures.size() != 2) throw Precondition("--structures takes exactly two files");
	auto m = load_element(structures[0]), m2 = load_element(structures[1]);
	std::string kind;
	auto phi = load_element(iso_file, &kind);
	if (kind != "isotopy") throw Precondition(iso_file + ": \"kind\" must be \"isotopy\"");
	if (N) {
		if (*N < 2) throw Precondition("--arity-max must be at least 2");
		for (auto* e : {&m, &m2, &phi}) *e = retruncate(*e, *N);
	}
	DescentTrace tr;
	const auto psi = theorem_a_driver(InftyStructure{m}, InftyStructure{m2}, Isotopy{phi}, &tr);
	const bool comm = !harrison_check(psi.f);
	const bool transports = transport_structure(psi, InftyStructure{m}).mc == m2;
	if (!comm || !transports) r.status = kViolation;
	r.json["iterations"] = tr.iterations();
	r.json["commutative"] = comm;
	r.json["transport_verified"] = transports;
	if (trace) {
		r.json["trace"] = Json::array();
		for (auto& s : tr.steps)
			r.json["trace"].push_back(
			    {{"n", s.n}, {"fd_s", s.fd_s}, {"fd_x", s.fd_x}, {"fd_da", s.fd_da}, {"x_terms", s.x_terms}});
	}
	r.json["isotopy"] = element_to_json(psi.f, "isotopy");
	r.files.emplace_back("rectified-isotopy.json", element_to_json(psi.f, "isotopy"));
	r.text << "commutative isotopy found after " << tr.iterations() << " iteration(s); commutative: "
	       << (comm ? "yes" : "NO") << ", transports m to m2: " << (transports ? "yes" : "NO") << "\n";
	if (trace) r.text << tr.format();
}

void cmd_uea(Report& r, const std::string& file, int W) {
	const auto g = load_lie(file);
	const auto U = uea(g, W);
	if (auto bad = U.defect()) {
		r.status = kViolation;
		r.json["defect"] = *bad;
		r.text << "defect: " << *bad << "\n";
	}
	r.json["weight_max"] = W;
	r.json["weight_dims"] = weight_dims_json(U.weight_dims());
	r.json["basis"] = Json::array();
	for (std::size_t i = 0; i < U.size(); ++i)
		r.json["basis"].push_back({U.names[i], U.degree[i], U.weight[i]});
	r.json["products"] = Json::array();
	for (auto& [ij, v] : U.mult)
		if (U.words[ij.first].size() == 1) r.json["products"].push_back({U.names[ij.first], U.names[ij.second], sparse_to_json(v, U.names)});
	r.text << "U(g) to weight " << W << ": " << U.size() << " PBW monomials\n";
	for (auto& [w, n] : U.weight_dims()) r.text << "  weight " << w << ": " << n << "\n";
}

void cmd_lcs(Report& r, const std::string& file) {
	const auto g = load_lie(file);
	const auto c = lcs(g);
	std::vector<std::string> names;
	for (std::size_t i = 0; i < g.dim(); ++i) names.push_back(g.space()->name(static_cast<int>(i)));
	r.json["terms"] = Json::array();
	for (std::size_t p = 0; p < c.terms.size(); ++p) {
		Json span = Json::array();
		for (auto& v : c.terms[p]) span.push_back(sparse_to_json(v, names));
		r.json["terms"].push_back({{"index", p + 1}, {"dim", c.terms[p].size()}, {"span", span}});
		r.text << "L^" << p + 1 << ": dim " << c.terms[p].size() << "\n";
	}
	if (c.nilpotency_class) {
		r.json["nilpotency_class"] = *c.nilpotency_class;
		r.text << "nilpotent of class " << *c.nilpotency_class << "\n";
	} else {
		r.json["nilpotency_class"] = nullptr;
		r.text << "not nilpotent within the step limit\n";
	}
	r.json["weights"] = g.weights();
	r.json["weights_follow_lcs"] = weights_follow_lcs(g);
}

void coalgebra_report(Report& r, const WeightCoalgebra& C, const std::string& label) {
	if (auto bad = C.defect()) {
		r.status = kViolation;
		r.json["defect"] = *bad;
		r.text << "defect: " << *bad << "\n";
	}
	const auto c = C.complex();
	const auto h = homology_dims(c);
	r.json["size"] = C.size();
	r.json["complex"] = complex_to_json(c);
	r.json["homology"] = bigraded_to_json(h);
	r.text << label << ": " << C.size() << " basis elements; homology\n" << bigraded_to_text(h);
}

void cmd_ce(Report& r, const std::string& file, int W) {
	const auto g = load_lie(file);
	r.json["weight_max"] = W;
	coalgebra_report(r, ce_chains(g, W), "CE chains to weight " + std::to_string(W));
}

void cmd_bar(Report& r, const std::string& file, std::optional<int> poly, int W) {
	WeightAlgebra A;
	std::string label;
	if (poly) {
		if (*poly < 1) throw Precondition("--polynomial must be at least 1");
		A = truncated_polynomial(*poly);
		label = "bar of Q[x]/(x^" + std::to_string(*poly + 1) + ")";
	} else {
		if (file.empty()) throw Precondition("give a Lie algebra file or --polynomial");
		A = uea(load_lie(file), W);
		label = "bar of U(g)";
	}
	if (auto bad = A.defect()) throw Precondition("input algebra: " + *bad);
	const auto B = bar(A, W);
	r.json["weight_max"] = W;
	coalgebra_report(r, B, label + " to weight " + std::to_string(W));
	Json chi = Json::object();
	for (auto& [w, x] : euler_characteristic(B.complex())) chi[std::to_string(w)] = x;
	r.json["euler_characteristic"] = chi;
}

void cmd_cobar(Report& r, const std::string& file, const std::string& flavor, bool complete, int W) {
	const auto g = load_lie(file);
	const auto C = ce_chains(g, W);
	r.json["weight_max"] = W;
	r.json["flavor"] = flavor;
	r.json["completed"] = complete;
	if (flavor == "assoc") {
		const auto A = cobar(C, W);
		if (auto bad = A.defect()) {
			r.status = kViolation;
			r.json["defect"] = *bad;
		}
		const auto h = homology_dims(A.complex());
		r.json["size"] = A.size();
		r.json["homology"] = bigraded_to_json(h);
		r.text << "cobar of the CE chains to weight " << W << ": " << A.size() << " words; homology\n" << bigraded_to_text(h);
		return;
	}
	const auto L = cobar_complete(C, W, CobarFlavor::lie);
	const auto c = L.lie.complex();
	const auto h = homology_dims(c);
	std::map<int, int> by_length;
	for (int l : L.length) ++by_length[l];
	Json lengths = Json::object();
	for (auto& [l, n] : by_length) lengths[std::to_string(l)] = n;
	r.json["size"] = c.size();
	r.json["bracket_lengths"] = lengths;
	r.json["lie_algebra"] = lie_to_json(L.lie);
	r.json["homology"] = bigraded_to_json(h);
	r.text << (complete ? "completed " : "") << "Lie cobar of the CE chains to weight " << W << ": " << c.size()
	       << " basis brackets; homology\n"
	       << bigraded_to_text(h);
	if (complete) r.text << "(at a fixed weight cap the completion adds nothing)\n";
}

void cmd_hcomplete(Report& r, const std::string& file, int W, int p_max) {
	const auto g = load_lie(file);
	const auto m = homotopy_completion_model(g, W);
	const auto rep = counit_as_filtered_map(m, std::min(p_max, W)).check();
	r.json["weight_max"] = W;
	r.json["size"] = m.source.size();
	r.json["filtered_qi"] = report_levels(rep);
	r.text << "Q g -> g at weight <= " << W << " (" << m.source.size() << " basis brackets)\n" << rep.format();
	if (!rep.pass()) r.status = kViolation;
	bool nonneg = true, negative = true;
	for (std::size_t i = 0; i < g.dim(); ++i) {
		nonneg = nonneg && g.degree(static_cast<int>(i)) >= 0;
		negative = negative && g.degree(static_cast<int>(i)) < 0;
	}
	if (nonneg) {
		const auto w = commensurability(m, g);
		auto rows = [](const std::vector<CommensurabilityWitness::Row>& v) {
			Json j = Json::array();
			for (auto& x : v) j.push_back({{"degree", x.degree}, {"level", x.level}, {"observed", x.observed}, {"bound", x.bound}});
			return j;
		};
		r.json["commensurability"] = {{"holds", w.holds()}, {"g_inside_f", rows(w.g_inside_f)}, {"f_inside_g", rows(w.f_inside_g)}};
		r.text << "F/G commensurability: " << (w.holds() ? "holds" : "FAILS") << "\n";
		if (!w.holds()) r.status = kViolation;
	}
	if (negative) {
		const auto n = degreewise_nilpotence(m);
		Json lv = Json::object();
		for (auto& [k, l] : n.max_level_by_degree) lv[std::to_string(k)] = l;
		r.json["nilpotence"] = {{"holds", n.holds}, {"max_level_by_degree", lv}};
		r.text << "degreewise nilpotence: " << (n.holds ? "holds" : "FAILS") << "\n";
		if (!n.holds) r.status = kViolation;
	}
}

void cmd_filtered_qi(Report& r, const std::string& file) {
	const auto m = parse_file(file, [](const Json& j) { return filtered_map_from_json(j); });
	const auto rep = m.check();
	r.json["filtered_qi"] = report_levels(rep);
	r.json["pass"] = rep.pass();
	if (auto p = rep.first_failure()) {
		r.status = kViolation;
		r.json["first_failure"] = *p;
	}
	r.text << rep.format();
}

void cmd_algebra_check(Report& r, const std::string& file) {
	const auto a = parse_file(file, [](const Json& j) { return algebra_from_json(j); });
	if (auto f = a.check()) {
		r.status = kViolation;
		r.json["failure"] = {{"check", f->check}, {"tuple", tuple_names(f->tuple, *a.space)}};
		r.text << f->describe(*a.space) << "\n";
	} else {
		r.text << "all identities hold\n";
	}
}

void cmd_fix_augmentation(Report& r, const std::string& file, const std::vector<std::string>& eps, int W, int K) {
	const auto g = load_lie(file);
	std::vector<Rational> values(g.dim(), Rational(0));
	for (auto& kv : eps) {
		const auto eq = kv.find('=');
		if (eq == std::string::npos) throw Precondition("--eps takes name=value, got \"" + kv + "\"");
		const auto idx = g.space()->find(kv.substr(0, eq));
		if (!idx) throw Precondition("--eps: unknown basis element \"" + kv.substr(0, eq) + "\"");
		try {
			values[*idx] = parse_rational(kv.substr(eq + 1));
		} catch (const Error&) {
			throw Precondition("--eps: bad value in \"" + kv + "\"");
		}
	}
	const auto U = uea(g, W);
	const auto fx = fix_augmentation(g, U, values, std::min(K, W));
	r.json["checked_monomials"] = fx.checked_monomials;
	r.json["alpha"] = Json::object();
	for (std::size_t b = 0; b < U.size(); ++b)
		if (U.weight[b] <= std::min(K, W)) {
			r.json["alpha"][U.names[b]] = sparse_to_json(fx.alpha[b], U.names);
			r.text << "alpha(" << U.names[b] << ") = " << sparse_to_text(fx.alpha[b], U.names) << "\n";
		}
	r.text << "eps = eps_bar o alpha, multiplicativity, d and gr(alpha) = id verified on " << fx.checked_monomials
	       << " monomials\n";
}

void cmd_completion_demo(Report& r, const std::string& file, int W, int cw, int N, std::uint64_t seed, const std::string& map_file) {
	const auto g = load_lie(file);
	std::optional<FilteredChainMap> m;
	if (!map_file.empty()) m = parse_file(map_file, [](const Json& j) { return filtered_map_from_json(j); });
	const auto d = theorem_b_demo(g, W, cw, N, seed, m ? &*m : nullptr);
	const Json dj = d.to_json();
	for (auto& [k, v] : dj.items()) r.json[k] = v;
	if (!d.pass()) r.status = kViolation;
	r.text << "CE coalgebra of dimension " << d.coalgebra_dim << " as a C-infinity coalgebra (arity <= " << N << ")\n"
	       << "isotopy fed to the driver: " << (d.stabilizer_found ? "non-commutative (stabilizer)" : "commutative")
	       << "\nrectified: " << (d.rectified ? "yes" : "NO") << " after " << d.trace.iterations() << " iteration(s)\n"
	       << (m ? "given map" : "counit Q g -> g") << ":\n"
	       << d.qi.format();
}

Json with_provenance(Json doc, const std::string& family, std::uint64_t seed, Json params) {
	doc["provenance"] = {{"generator", "cdef fixtures generate"}, {"family", family}, {"seed", seed}, {"params", std::move(params)}};
	return doc;
}

void cmd_fixtures(Report& r, const std::string& family, const RunConfig& cfg, int dim, const std::string& orientation) {
	if (cfg.out.empty()) throw Precondition("fixtures generate needs --out DIR");
	const auto o = parse_orientation(orientation);
	const Json params{{"dim", dim}, {"arity_max", cfg.arity_max}, {"orientation", orientation}};
	auto add = [&](const std::string& name, Json doc, Json p) {
		r.files.emplace_back(name, with_provenance(std::move(doc), family, cfg.seed, std::move(p)));
	};
	if (family == "stabilizer-corrupted-gauge") {
		const auto fx = stabilizer_fixture(dim, cfg.arity_max, o, cfg.seed);
		add("m.json", element_to_json(fx.x, "structure"), params);
		add("m2.json", element_to_json(fx.y, "structure"), params);
		add("phi.json", element_to_json(fx.phi().f, "isotopy"), params);
		add("gauge.json", element_to_json(fx.a, "gauge"), params);
	} else if (family == "random-c-infinity") {
		add("structure.json", element_to_json(random_c_infinity(dim, cfg.arity_max, o, cfg.seed).mc, "structure"), params);
	} else if (family == "heisenberg-suite") {
		const auto g = heisenberg_lie();
		const Json wp{{"weight_max", cfg.weight_max}};
		add("heisenberg.json", lie_to_json(g), Json::object());
		const auto U = uea(g, cfg.weight_max);
		Json u;
		u["basis"] = Json::array();
		for (std::size_t i = 0; i < U.size(); ++i) u["basis"].push_back({U.names[i], U.degree[i], U.weight[i]});
		u["weight_dims"] = weight_dims_json(U.weight_dims());
		add("heisenberg-uea.json", u, wp);
		add("heisenberg-ce.json", complex_to_json(ce_chains(g, cfg.weight_max).complex()), wp);
	} else if (family == "negative-graded-lie") {
		add("negative-graded-lie.json", lie_to_json(negative_graded_lie()), Json::object());
	} else if (family == "broken-controls") {
		add(kBrokenMcFile, element_to_json(broken_mc_fixture().mc, "structure"), Json::object());
		add(kBrokenHarrisonFile, element_to_json(broken_harrison_fixture(), "gauge"), Json::object());
		add(kBrokenFilteredQiFile, filtered_map_to_json(broken_filtered_qi_fixture()), Json::object());
		BinaryAlgebraDoc a;
		a.product = broken_associativity_fixture(&a.space);
		a.commutative = true;
		add(kBrokenAssociativityFile, algebra_to_json(a), Json::object());
	} else {
		throw Precondition("unknown fixture family \"" + family +
		                   "\" (stabilizer-corrupted-gauge, random-c-infinity, heisenberg-suite, negative-graded-lie, "
		                   "broken-controls)");
	}
	r.json["family"] = family;
	r.json["files"] = Json::array();
	for (auto& [name, j] : r.files) {
		r.json["files"].push_back(name);
		r.text << "wrote " << cfg.out << "/" << name << "\n";
	}
}

void cmd_acceptance(Report& r, const RunConfig& cfg, const std::string& fixtures, const std::vector<int>& only) {
	AcceptanceOptions opts;
	opts.seed = cfg.seed;
	opts.fixtures_dir = fixtures;
	opts.only = only;
	const auto results = run_acceptance(opts, cfg.format == "text" ? &std::cout : nullptr);
	r.json["seed"] = cfg.seed;
	r.json["criteria"] = Json::array();
	int failed = 0;
	for (auto& c : results) {
		failed += !c.pass;
		r.json["criteria"].push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
	}
	r.text << (failed ? "FAIL " : "PASS ") << results.size() - failed << "/" << results.size() << " criteria\n";
	if (failed) r.status = kViolation;
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"exact deformation theory of A-infinity and C-infinity structures"};
	app.require_subcommand(1);
	RunConfig cfg;
	app.add_option("--arity-max", cfg.arity_max, "truncation arity")->check(CLI::Range(2, 64));
	app.add_option("--weight-max", cfg.weight_max, "weight cap")->check(CLI::Range(1, 64));
	app.add_option("--seed", cfg.seed, "seed for randomized steps");
	app.add_flag("--trace", cfg.trace, "print per-iteration details");
	app.add_option("--out", cfg.out, "directory for the report and produced files");
	app.add_option("--format", cfg.format, "stdout format")->check(CLI::IsMember({"json", "text"}));
	app.fallthrough();

	std::string command;
	std::function<void(Report&)> action;
	auto sub = [&](const std::string& name, const std::string& help) {
		auto* s = app.add_subcommand(name, help);
		s->fallthrough();
		s->callback([&command, name] { command = name; });
		return s;
	};
	auto arity_given = [&app] { return app.get_option("--arity-max")->count() > 0; };

	int n = 0, k = 0;
	auto* eul = sub("eulerian", "print the Eulerian idempotent e^(k)_n");
	eul->add_option("--n", n)->required();
	eul->add_option("--k", k)->required();

	std::string f1, f2, f3, flavor = "lie", map_file, fixtures_dir, family, orientation = "algebra";
	std::vector<std::string> files, eps;
	std::vector<int> only;
	std::optional<int> poly;
	bool complete = false;
	int p_max = 3, check_weight = 3, coalgebra_weight = 2, dim = 2;

	auto* mc = sub("mc-check", "check the Maurer-Cartan equation and the flavor");
	mc->add_option("file", f1)->required();
	auto* ga = sub("gauge-act", "apply exp(gauge) to a Maurer-Cartan element");
	ga->add_option("gauge", f1)->required();
	ga->add_option("mc", f2)->required();
	auto* bc = sub("bch", "Baker-Campbell-Hausdorff product of two degree-0 elements");
	bc->add_option("a", f1)->required();
	bc->add_option("b", f2)->required();
	auto* hc = sub("harrison-check", "check vanishing on shuffle products");
	hc->add_option("file", f1)->required();
	auto* rt = sub("retract", "apply the retraction onto the commutative complex");
	rt->add_option("file", f1)->required();
	auto* tp = sub("transport", "transport a structure along an isotopy");
	tp->add_option("isotopy", f1)->required();
	tp->add_option("structure", f2)->required();
	auto* rc = sub("rectify", "turn an isotopy between commutative structures into a commutative one");
	rc->add_option("--structures", files)->required()->expected(2);
	rc->add_option("--isotopy", f3)->required();
	auto* ue = sub("uea", "universal enveloping algebra to a weight cap");
	ue->add_option("lie", f1)->required();
	auto* lc = sub("lcs", "lower central series");
	lc->add_option("lie", f1)->required();
	auto* ce = sub("ce", "Chevalley-Eilenberg chains and their homology");
	ce->add_option("lie", f1)->required();
	auto* br = sub("bar", "bar construction of U(g) or of a truncated polynomial algebra");
	br->add_option("lie", f1);
	br->add_option("--polynomial", poly, "use Q[x]/(x^(TOP+1))");
	auto* cb = sub("cobar", "cobar construction of the CE chains");
	cb->add_option("lie", f1)->required();
	cb->add_option("--flavor", flavor)->check(CLI::IsMember({"lie", "assoc"}));
	cb->add_flag("--complete", complete);
	auto* hq = sub("hcomplete-check", "filtered quasi-isomorphism Q g -> g and the filtration witnesses");
	hq->add_option("lie", f1)->required();
	hq->add_option("--p-max", p_max)->check(CLI::Range(1, 64));
	auto* fq = sub("filtered-qi-check", "check a filtered chain map level by level");
	fq->add_option("map", f1)->required();
	auto* ac = sub("algebra-check", "check a classical binary (co)algebra");
	ac->add_option("file", f1)->required();
	auto* fa = sub("fix-augmentation", "correct a character of g to the standard augmentation of U(g)");
	fa->add_option("lie", f1)->required();
	fa->add_option("--eps", eps, "values name=rational on basis vectors (others 0)");
	fa->add_option("--check-weight", check_weight)->check(CLI::Range(0, 64));
	auto* tb = sub("theorem-b-demo", "CE coalgebra, rectification, Lie cobar and the filtered comparison");
	tb->add_option("lie", f1)->required();
	tb->add_option("--coalgebra-weight", coalgebra_weight)->check(CLI::Range(1, 8));
	tb->add_option("--map", map_file, "explicit map Q g -> g to check instead of the counit");
	auto* fx = sub("fixtures", "fixture files");
	auto* fg = fx->add_subcommand("generate", "write a fixture family");
	fx->require_subcommand(1);
	fg->fallthrough();
	fg->add_option("--family", family)->required();
	fg->add_option("--dim", dim)->check(CLI::Range(2, 3));
	fg->add_option("--orientation", orientation)->check(CLI::IsMember({"algebra", "coalgebra"}));
	auto* acc = sub("acceptance", "acceptance suite");
	auto* ar = acc->add_subcommand("run", "run the acceptance criteria");
	acc->require_subcommand(1);
	ar->fallthrough();
	ar->add_option("--fixtures", fixtures_dir, "directory with the shipped negative controls");
	ar->add_option("--only", only, "criteria to run");

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp& e) {
		return app.exit(e);
	} catch (const CLI::ParseError& e) {
		app.exit(e);
		return kPrecondition;
	}

	Report r;
	r.command = command == "fixtures" ? "fixtures-generate" : command == "acceptance" ? "acceptance-run" : command;
	const std::map<std::string, std::function<void()>> table{
	    {"eulerian", [&] { cmd_eulerian(r, n, k); }},
	    {"mc-check", [&] { cmd_mc_check(r, f1); }},
	    {"gauge-act", [&] { cmd_gauge_act(r, f1, f2); }},
	    {"bch", [&] { cmd_bch(r, f1, f2, arity_given() ? std::optional<int>(cfg.arity_max) : std::nullopt); }},
	    {"harrison-check", [&] { cmd_harrison_check(r, f1); }},
	    {"retract", [&] { cmd_retract(r, f1); }},
	    {"transport", [&] { cmd_transport(r, f1, f2); }},
	    {"rectify",
	     [&] { cmd_rectify(r, files, f3, arity_given() ? std::optional<int>(cfg.arity_max) : std::nullopt, cfg.trace); }},
	    {"uea", [&] { cmd_uea(r, f1, cfg.weight_max); }},
	    {"lcs", [&] { cmd_lcs(r, f1); }},
	    {"ce", [&] { cmd_ce(r, f1, cfg.weight_max); }},
	    {"bar", [&] { cmd_bar(r, f1, poly, cfg.weight_max); }},
	    {"cobar", [&] { cmd_cobar(r, f1, flavor, complete, cfg.weight_max); }},
	    {"hcomplete-check", [&] { cmd_hcomplete(r, f1, cfg.weight_max, p_max); }},
	    {"filtered-qi-check", [&] { cmd_filtered_qi(r, f1); }},
	    {"algebra-check", [&] { cmd_algebra_check(r, f1); }},
	    {"fix-augmentation", [&] { cmd_fix_augmentation(r, f1, eps, cfg.weight_max, check_weight); }},
	    {"theorem-b-demo",
	     [&] {
		     cmd_completion_demo(r, f1, cfg.weight_max, coalgebra_weight, arity_given() ? cfg.arity_max : 3, cfg.seed, map_file);
	     }},
	    {"fixtures", [&] { cmd_fixtures(r, family, cfg, dim, orientation); }},
	    {"acceptance", [&] { cmd_acceptance(r, cfg, fixtures_dir, only); }},
	};
	try {
		table.at(command)();
		emit(r, cfg);
		return r.status;
	} catch (const IoError& e) {
		return fail(r.command, kIo, e.what(), cfg);
	} catch (const ParseError& e) {
		return fail(r.command, kIo, e.what(), cfg);
	} catch (const Json::exception& e) {
		return fail(r.command, kIo, e.what(), cfg);
	} catch (const std::exception& e) {
		return fail(r.command, kPrecondition, e.what(), cfg);
	}
}
