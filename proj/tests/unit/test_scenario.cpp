#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "gen.hpp"
#include "negmass/scenario/config.hpp"
#include "negmass/scenario/output.hpp"
#include "negmass/scenario/runner.hpp"

using namespace negmass;
using namespace negmass::scenario;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name)
{
    const auto p = fs::temp_directory_path() / ("negmass_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

void spit(const fs::path& p, const std::string& text)
{
    std::ofstream out(p, std::ios::binary);
    out << text;
}

bool has_diagnostic(const std::string& text, const std::string& path, const std::string& what)
{
    try
    {
        parse_scenario(text);
    }
    catch (const ScenarioError& e)
    {
        for (const auto& d : e.diagnostics())
            if (d.path == path && d.message.find(what) != std::string::npos)
                return true;
        ADD_FAILURE() << e.what();
        return false;
    }
    ADD_FAILURE() << "parsed without error";
    return false;
}

int run_cli(const std::string& args, std::string* out = nullptr)
{
    const std::string cmd = std::string(NEGMASS_CLI) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string text;
    char buf[512];
    while (std::fgets(buf, sizeof buf, pipe))
        text += buf;
    const int status = pclose(pipe);
    if (out)
        *out = text;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Parser, MinimalScenarioGetsDefaults)
{
    const auto s = parse_scenario("name = \"b\"\nkind = \"barrier\"\n");
    EXPECT_EQ(s.name, "b");
    EXPECT_EQ(s.seed, 0u);
    EXPECT_DOUBLE_EQ(s.number("tau"), 1.0);
    EXPECT_EQ(s.integer("n_samples"), 201);
    EXPECT_TRUE(s.output.csv);
}

TEST(Parser, ValuesCommentsAndCoercion)
{
    const auto s = parse_scenario(R"(# leading comment
name = "with-dash_1"   # trailing
kind = "nbody"
seed = 12

[integrator]
rel_tol = 1e-11
max_steps = 5e4

[nbody]
masses = [1, -2.5, 3e0,]
gravity = false
duration = 3
)");
    EXPECT_EQ(s.seed, 12u);
    EXPECT_DOUBLE_EQ(s.integrator.rel_tol, 1e-11);
    EXPECT_EQ(s.integrator.max_steps, 50000u);
    EXPECT_EQ(s.array("masses"), (std::vector<double>{1.0, -2.5, 3.0}));
    EXPECT_FALSE(s.flag("gravity"));
    EXPECT_DOUBLE_EQ(s.number("duration"), 3.0);
}

TEST(Parser, ReportsUnknownKeysSectionsAndTypes)
{
    const std::string head = "name = \"x\"\nkind = \"barrier\"\n";
    EXPECT_TRUE(has_diagnostic(head + "[barrier]\ntua = 1\n", "barrier.tua", "unknown key"));
    EXPECT_TRUE(has_diagnostic(head + "[bogus]\na = 1\n", "bogus", "unknown section"));
    EXPECT_TRUE(has_diagnostic(head + "[barrier]\ntau = \"one\"\n", "barrier.tau", "expected number"));
    EXPECT_TRUE(has_diagnostic(head + "[barrier]\nn_samples = 2.5\n", "barrier.n_samples",
                               "expected integer"));
    EXPECT_TRUE(has_diagnostic(head + "[barrier]\ntau = 1\ntau = 2\n", "barrier.tau", "duplicate"));
    EXPECT_TRUE(has_diagnostic("kind = \"barrier\"\n", "name", "missing required key"));
    EXPECT_TRUE(has_diagnostic("name = \"x\"\n", "kind", "missing required key"));
    EXPECT_TRUE(has_diagnostic("name = \"x\"\nkind = \"warp\"\n", "kind", "unknown kind"));
    EXPECT_TRUE(has_diagnostic(head + "[integrator]\nrel_tol = 2\n", "integrator", "(0, 1)"));
    EXPECT_TRUE(has_diagnostic("name = \"x\"\nkind = \"runaway\"\n[runaway]\ncoupling = \"weak\"\n",
                               "runaway.coupling", "one of"));
    EXPECT_TRUE(has_diagnostic("name = \"a b\"\nkind = \"pair\"\n", "name", "letters"));
    EXPECT_TRUE(has_diagnostic(head + "seed = 18446744073709551615\n", "seed", "out of range"));
}

TEST(Parser, CollectsAllProblemsSortedByLine)
{
    try
    {
        parse_scenario("name = \"x\"\nkind = \"pair\"\n[pair]\nfoo = 1\nr0 = true\nbar = 2\n");
        FAIL();
    }
    catch (const ScenarioError& e)
    {
        ASSERT_EQ(e.diagnostics().size(), 3u);
        EXPECT_EQ(e.diagnostics()[0].line, 4);
        EXPECT_EQ(e.diagnostics()[1].line, 5);
        EXPECT_EQ(e.diagnostics()[2].line, 6);
    }
}

TEST(Parser, RoundTripIsIdempotentOverRandomScenarios)
{
    test::Gen g(101);
    const auto& kinds = kind_specs();
    for (int i = 0; i < 300; ++i)
    {
        const auto& kind = kinds[g.engine()() % kinds.size()];
        Scenario s = parse_scenario("name = \"r" + std::to_string(i) + "\"\nkind = \"" + kind.name
                                    + "\"\n");
        s.seed = g.engine()() >> 11;
        s.integrator.rel_tol = g.log_uniform(1e-14, 0.1);
        s.output.csv = g.sign() > 0;
        for (const auto& key : kind.keys)
        {
            Value& v = s.params.at(key.name);
            switch (key.type)
            {
            case ValueType::number: v.number = g.sign() * g.log_uniform(1e-300, 1e300); break;
            case ValueType::integer: v.number = double(g.engine()() % 100000); break;
            case ValueType::boolean: v.boolean = g.sign() > 0; break;
            case ValueType::string:
                if (!key.choices.empty())
                    v.text = key.choices[g.engine()() % key.choices.size()];
                break;
            case ValueType::number_array:
                v.array.resize(g.engine()() % 5);
                for (auto& x : v.array)
                    x = g.uniform(-1e3, 1e3);
                break;
            }
        }
        const std::string text = serialize_scenario(s);
        const Scenario back = parse_scenario(text);
        EXPECT_TRUE(back == s) << text;
        EXPECT_EQ(serialize_scenario(back), text);
    }
}

TEST(Output, NumberFormattingAndCsv)
{
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(-2.0), "-2");
    EXPECT_EQ(format_number(1e-300), "1e-300");
    EXPECT_EQ(format_number(NAN), "nan");
    EXPECT_EQ(format_number(-INFINITY), "-inf");
    CsvTable t({"a", "b"});
    t.add_row({1.0, 0.25});
    EXPECT_EQ(t.text(), "a,b\n1,0.25\n");
    EXPECT_THROW(t.add_row({1.0}), std::exception);
}

TEST(Output, AtomicWriteLeavesNoTemporary)
{
    const auto dir = scratch_dir("atomic");
    const auto p = dir / "sub" / "f.csv";
    write_atomic(p, "one\n");
    write_atomic(p, "two\n");
    EXPECT_EQ(slurp(p), "two\n");
    EXPECT_FALSE(fs::exists(p.string() + ".tmp"));
}

TEST(Runner, WritesArtifactsAndRecordsTolerances)
{
    const auto dir = scratch_dir("runner");
    const auto s = parse_scenario("name = \"bar\"\nkind = \"barrier\"\n");
    RunOptions o;
    o.out_dir = dir;
    const auto r = run_scenario(s, o);
    EXPECT_EQ(r.status, Status::pass) << r.error;
    ASSERT_TRUE(fs::exists(dir / "bar" / "barrier.csv"));
    ASSERT_TRUE(fs::exists(dir / "bar" / "report.json"));
    const auto j = nlohmann::json::parse(slurp(dir / "bar" / "report.json"));
    EXPECT_EQ(j["status"], "pass");
    for (const auto& m : j["metrics"])
    {
        ASSERT_TRUE(m.contains("tolerance"));
        ASSERT_TRUE(m.contains("status"));
        EXPECT_EQ(m["tolerance"].is_null(), m["status"] == "report-only");
    }
    const auto csv = slurp(dir / "bar" / "barrier.csv");
    EXPECT_EQ(csv.substr(0, 6), "t,v,F\n");
}

TEST(Runner, DeterministicOutputs)
{
    const auto a = scratch_dir("det_a"), b = scratch_dir("det_b");
    const auto s = parse_scenario("name = \"ball\"\nkind = \"sphere\"\nseed = 5\n");
    RunOptions o;
    o.out_dir = a;
    run_scenario(s, o);
    o.out_dir = b;
    run_scenario(s, o);
    EXPECT_EQ(slurp(a / "ball" / "report.json"), slurp(b / "ball" / "report.json"));
    o.seed = 6;
    const auto other = run_scenario(s, o);
    EXPECT_EQ(other.seed, 6u);
    EXPECT_NE(slurp(a / "ball" / "report.json"), slurp(b / "ball" / "report.json"));
}

TEST(Runner, ToleranceScaleAndModuleErrors)
{
    const auto dir = scratch_dir("scale");
    RunOptions o;
    o.out_dir = dir;
    auto s = parse_scenario("name = \"y\"\nkind = \"yukawa\"\n[yukawa]\ntol_turning = 1e-30\n");
    EXPECT_EQ(run_scenario(s, o).status, Status::fail);
    o.tolerance_scale = 1e25;
    EXPECT_EQ(run_scenario(s, o).status, Status::pass);

    auto bad = parse_scenario("name = \"z\"\nkind = \"barrier\"\n[barrier]\nmass = 1.0\n");
    const auto r = run_scenario(bad, o);
    EXPECT_EQ(r.status, Status::fail);
    EXPECT_NE(r.error.find("negative"), std::string::npos);
    const auto j = nlohmann::json::parse(slurp(dir / "z" / "report.json"));
    EXPECT_EQ(j["error"], r.error);
}

TEST(Runner, EveryExampleScenarioPasses)
{
    const auto dir = scratch_dir("examples");
    RunOptions o;
    o.out_dir = dir;
    const auto suite = run_suite(NEGMASS_SCENARIO_DIR, o);
    EXPECT_TRUE(suite.invalid.empty());
    EXPECT_EQ(suite.runs.size(), kind_specs().size());
    for (const auto& r : suite.runs)
        EXPECT_EQ(r.status, Status::pass) << r.name << " " << r.error;
    EXPECT_TRUE(suite.ok());
    EXPECT_TRUE(fs::exists(dir / "suite.json"));
}

TEST(Cli, ExitStatusAndValidate)
{
    const auto dir = scratch_dir("cli");
    spit(dir / "good.toml", "name = \"g\"\nkind = \"bubble\"\n");
    spit(dir / "bad.toml", "name = \"b\"\nkind = \"yukawa\"\n[yukawa]\ntol_turning = 1e-30\n");
    std::string out;
    EXPECT_EQ(run_cli("run " + (dir / "good.toml").string() + " --out-dir " + (dir / "o").string()),
              0);
    EXPECT_EQ(run_cli("validate " + (dir / "good.toml").string(), &out), 0);
    EXPECT_NE(out.find("[bubble]"), std::string::npos);
    EXPECT_EQ(run_cli("list-kinds", &out), 0);
    EXPECT_NE(out.find("dirac"), std::string::npos);

    EXPECT_EQ(run_cli("suite " + dir.string() + " --out-dir " + (dir / "o").string()), 1);
    spit(dir / "broken.toml", "name = \"k\"\nkind = \"bubble\"\n[bubble]\nvolum = 1\n");
    EXPECT_EQ(run_cli("validate " + (dir / "broken.toml").string(), &out), 2);
    EXPECT_NE(out.find("bubble.volum"), std::string::npos);
    fs::remove(dir / "broken.toml");
    fs::remove(dir / "bad.toml");
    EXPECT_EQ(run_cli("suite " + dir.string() + " --out-dir " + (dir / "o").string()), 0);
}
