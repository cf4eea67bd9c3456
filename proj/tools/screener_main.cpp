// Command-line driver: candidate screening runs, catalogue derivation and
// audit, and the pinned fixture suite.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "altsieve/fixtures.hpp"
#include "altsieve/repdata.hpp"
#include "altsieve/screener.hpp"

using namespace altsieve;

int main(int argc, char** argv) {
    CLI::App app{"altsieve: exact modular-representation screening for alternating subgroups of exceptional groups"};
    app.require_subcommand(1);

    std::string data_dir;
    app.add_option("--data", data_dir, "data directory (default: built-in path or ALTSIEVE_DATA)");

    // ---- run ----
    auto* run = app.add_subcommand("run", "screen candidate composition-factor sets for one configuration");
    std::string group = "alt6", cover = "none", target = "E7", module = "both", traces, json_out;
    int prime = 5;
    bool strict = false, collapse = false;
    uint64_t seed = 1;
    run->add_option("--group", group, "alt5..alt10")->required();
    run->add_option("--cover", cover, "none|double|triple");
    run->add_option("--target", target, "F4|E6|E7|E8")->required();
    run->add_option("--prime", prime, "characteristic")->required();
    run->add_option("--module", module, "vmin|lg|both");
    run->add_option("--traces", traces, "CSV file with extended trace constraints");
    run->add_option("--json", json_out, "write the JSON report here");
    run->add_flag("--strict-parity", strict, "enable the sharper odd-trivial-count rule");
    run->add_flag("--collapse-out-orbits", collapse, "report candidates up to the outer automorphism");
    run->add_option("--seed", seed, "report seed (recorded; verdicts are deterministic)");

    // ---- catalogue ----
    auto* cat = app.add_subcommand("catalogue", "derived-data maintenance");
    auto* build = cat->add_subcommand("build", "rebuild fingerprints, unipotent data and module files");
    std::string only;
    build->add_option("--only", only, "restrict to one catalogue, e.g. 6_5");
    auto* auditcmd = cat->add_subcommand("audit", "rebuild everything and compare against the shipped files");
    cat->require_subcommand(1);

    // ---- fixtures ----
    auto* fix = app.add_subcommand("fixtures", "run the pinned acceptance fixtures");
    int only_criterion = 0;
    fix->add_option("--criterion", only_criterion, "run a single criterion (1..10)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!data_dir.empty()) repdata::Data::set_dir(data_dir);

        if (*run) {
            if (group.rfind("alt", 0) != 0) throw PreconditionViolated("--group must look like alt7");
            screener::CaseConfig cfg;
            cfg.group_n = int(util::parse_int(group.substr(3)));
            cfg.cover = cover;
            cfg.target = target;
            cfg.prime = prime;
            if (module == "vmin") cfg.kind = screener::ModuleKind::VMin;
            else if (module == "lg") cfg.kind = screener::ModuleKind::LG;
            else if (module == "both") cfg.kind = screener::ModuleKind::Both;
            else throw PreconditionViolated("--module must be vmin, lg or both");
            cfg.trace_file = traces;
            cfg.strict_parity = strict;
            cfg.collapse_out_orbits = collapse;
            cfg.seed = seed;
            auto rep = screener::run_case(cfg);
            std::cout << screener::render_text(rep);
            if (!json_out.empty()) {
                std::ofstream out(json_out, std::ios::binary);
                out << screener::render_json(rep) << "\n";
                std::cout << "json report written to " << json_out << "\n";
            }
            return 0;
        }
        if (*build) {
            auto pairs = repdata::catalogued_pairs();
            if (!only.empty()) {
                auto us = only.find('_');
                int n = int(util::parse_int(only.substr(0, us)));
                int p = int(util::parse_int(only.substr(us + 1)));
                pairs = {{n, p}};
            }
            repdata::write_derived_data(repdata::Data::dir(), pairs);
            std::cout << "derived data written under " << repdata::Data::dir() << "\n";
            return 0;
        }
        if (*auditcmd) {
            auto problems = repdata::audit(repdata::Data::dir());
            if (problems.empty()) {
                std::cout << "audit clean\n";
                return 0;
            }
            for (const auto& p : problems) std::cout << "audit: " << p << "\n";
            return 1;
        }
        if (*fix) {
            bool all_ok = true;
            auto report = [&](const fixtures::Result& r) {
                std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.detail << ")  ["
                          << int(r.seconds * 1000) << " ms]\n";
                all_ok = all_ok && r.pass;
            };
            if (only_criterion) report(fixtures::criterion(only_criterion));
            else
                for (const auto& r : fixtures::run_all()) report(r);
            return all_ok ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
