// Runs the cdef binary as a subprocess against the shipped fixtures.
#include "cdef/pipeline.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace cdef;
namespace fs = std::filesystem;

namespace {

struct Run {
	int code = -1;
	std::string out;
};

std::string env(const char* name) {
	const char* v = std::getenv(name);
	return v ? v : "";
}

Run cli(const std::string& args) {
	const std::string cmd = env("CDEF_CLI") + " " + args + " 2>/dev/null";
	Run r;
	FILE* p = popen(cmd.c_str(), "r");
	if (!p) return r;
	char buf[4096];
	std::size_t n;
	while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
	const int st = pclose(p);
	r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
	return r;
}

std::string fx(const std::string& name) { return env("CDEF_FIXTURES") + "/" + name; }

fs::path scratch(const std::string& name) {
	auto d = fs::temp_directory_path() / ("cdef-cli-test-" + name);
	fs::remove_all(d);
	return d;
}

std::string slurp(const fs::path& p) {
	std::ifstream in(p);
	return {std::istreambuf_iterator<char>(in), {}};
}

class Cli : public ::testing::Test {
protected:
	void SetUp() override {
		if (env("CDEF_CLI").empty() || env("CDEF_FIXTURES").empty()) GTEST_SKIP() << "CDEF_CLI / CDEF_FIXTURES unset";
	}
};

} // namespace

TEST_F(Cli, EulerianMatchesFrozenTable) {
	auto r = cli("eulerian --n 3 --k 1 --format json");
	ASSERT_EQ(r.code, 0);
	const auto j = Json::parse(r.out);
	std::map<std::string, std::string> terms;
	for (auto& t : j["terms"]) terms[t[0].get<std::string>()] = t[1].get<std::string>();
	const std::map<std::string, std::string> frozen{{"[1,2,3]", "1/3"},  {"[1,3,2]", "-1/6"}, {"[2,1,3]", "-1/6"},
	                                                {"[2,3,1]", "-1/6"}, {"[3,1,2]", "-1/6"}, {"[3,2,1]", "1/3"}};
	EXPECT_EQ(terms, frozen);
	EXPECT_EQ(j["status"], "pass");
}

TEST_F(Cli, EulerianTextUsesCycleNotation) {
	auto r = cli("eulerian --n 3 --k 3");
	ASSERT_EQ(r.code, 0);
	EXPECT_NE(r.out.find("1/6 * ()"), std::string::npos);
	EXPECT_NE(r.out.find("(1 2 3)"), std::string::npos);
}

TEST_F(Cli, ShippedFixturesRoundTrip) {
	for (const char* f : {"m.json", "m2.json", "phi.json", "gauge.json"}) {
		const auto j = read_json_file(fx(f));
		const auto doc = element_from_json(j);
		EXPECT_EQ(element_to_json(doc.element, doc.kind)["arity_components"], j["arity_components"]) << f;
	}
	const auto g = lie_from_json(read_json_file(fx("heisenberg.json")));
	EXPECT_EQ(g.dim(), 3u);
	const auto m = filtered_map_from_json(read_json_file(fx(kBrokenFilteredQiFile)));
	EXPECT_EQ(filtered_map_to_json(m)["map"], read_json_file(fx(kBrokenFilteredQiFile))["map"]);
	const auto a = algebra_from_json(read_json_file(fx(kBrokenAssociativityFile)));
	EXPECT_EQ(algebra_to_json(a)["product"], read_json_file(fx(kBrokenAssociativityFile))["product"]);
}

TEST_F(Cli, ShippedStructuresAreMaurerCartan) {
	EXPECT_EQ(cli("mc-check " + fx("m.json")).code, 0);
	EXPECT_EQ(cli("mc-check " + fx("m2.json")).code, 0);
}

TEST_F(Cli, RectifiesShippedStabilizerFixture) {
	EXPECT_EQ(cli("harrison-check " + fx("phi.json")).code, 2) << "the shipped isotopy should not be commutative";
	const auto out = scratch("rectify");
	auto r = cli("rectify --structures " + fx("m.json") + " " + fx("m2.json") + " --isotopy " + fx("phi.json") +
	             " --trace --format json --out " + out.string());
	ASSERT_EQ(r.code, 0) << r.out;
	const auto j = Json::parse(r.out);
	EXPECT_TRUE(j["commutative"].get<bool>());
	EXPECT_TRUE(j["transport_verified"].get<bool>());
	EXPECT_FALSE(j["trace"].empty());
	ASSERT_TRUE(fs::exists(out / "rectified-isotopy.json"));
	EXPECT_EQ(cli("harrison-check " + (out / "rectified-isotopy.json").string()).code, 0);
	// transporting m along the rectified isotopy gives m2
	auto t = cli("transport " + (out / "rectified-isotopy.json").string() + " " + fx("m.json") + " --format json");
	ASSERT_EQ(t.code, 0);
	const auto m2 = element_from_json(read_json_file(fx("m2.json"))).element;
	EXPECT_EQ(element_from_json(Json::parse(t.out)["result"]).element, m2);
}

TEST_F(Cli, NegativeControlsExitTwo) {
	EXPECT_EQ(cli("mc-check " + fx(kBrokenMcFile)).code, 2);
	EXPECT_EQ(cli("harrison-check " + fx(kBrokenHarrisonFile)).code, 2);
	EXPECT_EQ(cli("algebra-check " + fx(kBrokenAssociativityFile)).code, 2);
	auto r = cli("filtered-qi-check --format json " + fx(kBrokenFilteredQiFile));
	EXPECT_EQ(r.code, 2);
	EXPECT_EQ(Json::parse(r.out)["first_failure"], 2);
	EXPECT_EQ(Json::parse(r.out)["status"], "property-violation");
}

TEST_F(Cli, MalformedFileNamesPathAndKey) {
	const auto dir = scratch("malformed");
	fs::create_directories(dir);
	auto j = read_json_file(fx("m.json"));
	j.erase("basis");
	const auto path = (dir / "no-space.json").string();
	write_json_file(path, j);
	auto r = cli("mc-check --format json " + path);
	EXPECT_EQ(r.code, 3);
	const auto msg = Json::parse(r.out)["error"].get<std::string>();
	EXPECT_NE(msg.find(path), std::string::npos) << msg;
	EXPECT_NE(msg.find("basis"), std::string::npos) << msg;

	std::ofstream(dir / "garbage.json") << "{ not json";
	EXPECT_EQ(cli("mc-check " + (dir / "garbage.json").string()).code, 3);
	EXPECT_EQ(cli("mc-check " + (dir / "absent.json").string()).code, 3);
}

TEST_F(Cli, PreconditionFailuresExitOne) {
	EXPECT_EQ(cli("fixtures generate --family nonsense --out " + scratch("bad").string()).code, 1);
	EXPECT_EQ(cli("eulerian --n 9 --k 1").code, 1);
	EXPECT_EQ(cli("transport " + fx("gauge.json") + " " + fx("m.json")).code, 1); // wrong kind
	EXPECT_EQ(cli("no-such-command").code, 1);
}

TEST_F(Cli, GenerationIsDeterministic) {
	const auto a = scratch("det-a"), b = scratch("det-b");
	for (const char* fam : {"stabilizer-corrupted-gauge", "random-c-infinity", "broken-controls"}) {
		const std::string args = std::string("fixtures generate --family ") + fam + " --seed 11 --arity-max 4 --out ";
		ASSERT_EQ(cli(args + a.string()).code, 0) << fam;
		ASSERT_EQ(cli(args + b.string()).code, 0) << fam;
	}
	std::size_t n = 0;
	for (auto& e : fs::directory_iterator(a)) {
		++n;
		EXPECT_EQ(slurp(e.path()), slurp(b / e.path().filename())) << e.path().filename();
	}
	EXPECT_EQ(n, 9u);
	const std::string demo = "theorem-b-demo --format json --seed 5 " + fx("heisenberg.json");
	EXPECT_EQ(cli(demo).out, cli(demo).out);
}

TEST_F(Cli, ShippedFixturesMatchGenerator) {
	const auto d = scratch("regen");
	ASSERT_EQ(cli("fixtures generate --family stabilizer-corrupted-gauge --seed 0 --arity-max 4 --out " + d.string()).code, 0);
	ASSERT_EQ(cli("fixtures generate --family broken-controls --out " + d.string()).code, 0);
	for (auto& e : fs::directory_iterator(d))
		EXPECT_EQ(slurp(e.path()), slurp(fx(e.path().filename().string()))) << e.path().filename();
}

TEST_F(Cli, LieCommands) {
	const auto h = fx("heisenberg.json");
	auto ce = cli("ce --format json " + h);
	ASSERT_EQ(ce.code, 0);
	std::map<std::pair<int, int>, int> betti;
	const auto cj = Json::parse(ce.out);
	for (auto& e : cj["homology"]) betti[{e["degree"].get<int>(), e["weight"].get<int>()}] = e["dim"].get<int>();
	EXPECT_EQ(betti, (std::map<std::pair<int, int>, int>{{{1, 1}, 2}, {{2, 3}, 2}, {{3, 4}, 1}}));
	EXPECT_EQ(cli("lcs " + h).code, 0);
	EXPECT_EQ(cli("uea --weight-max 3 " + h).code, 0);
	EXPECT_EQ(cli("bar --polynomial 2").code, 0);
	EXPECT_EQ(cli("cobar --complete " + h).code, 0);
	EXPECT_EQ(cli("hcomplete-check " + h).code, 0);
	EXPECT_EQ(cli("hcomplete-check " + fx("negative-graded-lie.json")).code, 0);
	EXPECT_EQ(cli("fix-augmentation --eps x=2 --eps y=-1/3 " + h).code, 0);
	EXPECT_EQ(cli("fix-augmentation --eps w=2 " + h).code, 1);
	EXPECT_EQ(cli("theorem-b-demo " + h).code, 0);
	EXPECT_EQ(cli("theorem-b-demo --map " + fx(kBrokenFilteredQiFile) + " " + h).code, 2);
}

TEST_F(Cli, AcceptanceSubsetThroughCli) {
	auto r = cli("acceptance run --only 7 --only 10 --fixtures " + env("CDEF_FIXTURES") + " --format json");
	ASSERT_EQ(r.code, 0) << r.out;
	const auto j = Json::parse(r.out);
	ASSERT_EQ(j["criteria"].size(), 2u);
	for (auto& c : j["criteria"]) EXPECT_TRUE(c["pass"].get<bool>()) << c["name"];
}
