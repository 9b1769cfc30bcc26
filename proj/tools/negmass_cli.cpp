// negmass: run scenario files.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "negmass/scenario/config.hpp"
#include "negmass/scenario/runner.hpp"

namespace sc = negmass::scenario;

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void print_diagnostics(const std::string& file, const sc::ScenarioError& e)
{
    for (const auto& d : e.diagnostics())
        std::cerr << file << ":" << d.line << ": " << (d.path.empty() ? "" : d.path + ": ")
                  << d.message << "\n";
}

void print_run(const sc::RunReport& r)
{
    std::cout << r.name << " [" << r.kind << "] " << sc::to_string(r.status) << "\n";
    for (const auto& m : r.metrics)
    {
        std::cout << "  " << m.name << " = " << m.value;
        if (m.tolerance)
            std::cout << "  (tol " << *m.tolerance << ", " << sc::to_string(m.status) << ")";
        std::cout << "\n";
    }
    for (const auto& [k, v] : r.details)
        std::cout << "  " << k << ": " << v << "\n";
    if (!r.error.empty())
        std::cout << "  error: " << r.error << "\n";
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Signed-mass physics scenarios"};
    app.require_subcommand(1);

    std::string out_dir = sc::default_out_dir().string();
    double tol_scale = 1.0;
    std::uint64_t seed = 0;
    bool quiet = false;

    auto add_run_flags = [&](CLI::App* sub) {
        sub->add_option("--out-dir", out_dir, "output root (NEGMASS_OUT_DIR)");
        sub->add_option("--tolerance-scale", tol_scale, "multiply every tolerance")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "override the scenario seed");
        sub->add_flag("-q,--quiet", quiet, "print only the status line");
    };

    std::string file, dir;
    auto* run = app.add_subcommand("run", "run one scenario file");
    run->add_option("file", file)->required();
    add_run_flags(run);

    auto* suite = app.add_subcommand("suite", "run every *.toml in a directory");
    suite->add_option("dir", dir)->required();
    add_run_flags(suite);

    auto* validate = app.add_subcommand("validate", "parse a scenario and print it normalized");
    validate->add_option("file", file)->required();

    auto* kinds = app.add_subcommand("list-kinds", "list experiment kinds and their keys");

    CLI11_PARSE(app, argc, argv);

    try
    {
        sc::RunOptions opts;
        opts.out_dir = out_dir;
        opts.tolerance_scale = tol_scale;
        const bool seed_given = (run->parsed() && run->count("--seed"))
                                || (suite->parsed() && suite->count("--seed"));
        if (seed_given)
            opts.seed = seed;

        if (kinds->parsed())
        {
            for (const auto& k : sc::kind_specs())
            {
                std::cout << k.name << ": " << k.summary << "\n";
                for (const auto& key : k.keys)
                {
                    std::cout << "  " << key.name << " (" << sc::to_string(key.type) << ")";
                    if (!key.doc.empty())
                        std::cout << "  " << key.doc;
                    std::cout << "\n";
                }
            }
            return 0;
        }
        if (validate->parsed())
        {
            try
            {
                std::cout << sc::serialize_scenario(sc::parse_scenario(slurp(file)));
            }
            catch (const sc::ScenarioError& e)
            {
                print_diagnostics(file, e);
                return 2;
            }
            return 0;
        }
        if (run->parsed())
        {
            sc::Scenario s;
            try
            {
                s = sc::parse_scenario(slurp(file));
            }
            catch (const sc::ScenarioError& e)
            {
                print_diagnostics(file, e);
                return 2;
            }
            const auto r = sc::run_scenario(s, opts);
            if (quiet)
                std::cout << r.name << " " << sc::to_string(r.status) << "\n";
            else
                print_run(r);
            return r.status == sc::Status::fail ? 1 : 0;
        }
        if (suite->parsed())
        {
            const auto rep = sc::run_suite(dir, opts);
            for (const auto& r : rep.runs)
            {
                if (quiet)
                    std::cout << r.name << " " << sc::to_string(r.status) << "\n";
                else
                    print_run(r);
            }
            for (const auto& [f, err] : rep.invalid)
                std::cout << f << " invalid\n" << err << "\n";
            return rep.ok() ? 0 : 1;
        }
    }
    catch (const std::exception& e)
    {
        std::cerr << "negmass: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
