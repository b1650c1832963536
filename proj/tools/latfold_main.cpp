// latfold command-line front end: scriptable access to the lattice
// geometry, folding search, structure fitting and the quantum-search
// capacity tables. Machine-readable output goes to stdout (JSON with
// --json, text or CSV otherwise); diagnostics go to stderr.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "latfold/latfold.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw latfold::parse_error("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json code_to_json(const latfold::ConformationCode& code) {
    json residues = json::array();
    for (const auto& r : code.residues) {
        residues.push_back({{"aa", r.amino_acid},
                            {"phi", r.phi_choice},
                            {"psi", r.psi_choice},
                            {"omega", r.omega == latfold::Omega::trans ? "trans" : "cis"}});
    }
    return json{{"chirality", code.chirality == latfold::Chirality::L ? "L" : "D"},
                {"residues", residues}};
}

std::string code_to_text(const latfold::ConformationCode& code) {
    std::string out;
    for (const auto& r : code.residues) {
        out += "(" + std::to_string(r.phi_choice) + "," + std::to_string(r.psi_choice) + "," +
               (r.omega == latfold::Omega::trans ? "t" : "c") + ")";
    }
    return out;
}

latfold::EnergyModel load_model(const std::string& name) {
    if (name == "hp") return latfold::EnergyModel::hp();
    if (name == "class") return latfold::EnergyModel::synthetase();
    return latfold::EnergyModel::parse(read_file(name));
}

std::vector<std::string> sequence_labels(const std::string& seq, const latfold::EnergyModel& m) {
    std::vector<std::string> labels;
    for (char ch : seq) {
        if (m.key == latfold::EnergyKeyKind::identity)
            labels.emplace_back(1, ch);
        else
            labels.push_back(latfold::code3_of_letter(ch));
    }
    return labels;
}

json fold_report_json(const latfold::FoldReport& rep) {
    json codes = json::array();
    for (const auto& c : rep.optimal) codes.push_back(code_to_json(c));
    return json{{"best_energy", rep.best_energy},
                {"optimal_count", rep.optimal_count},
                {"optimal_codes", codes},
                {"states_examined", rep.states_examined},
                {"total_states", rep.total_states},
                {"seed", rep.seed}};
}

int run(int argc, char** argv) {
    CLI::App app{"Diamond-lattice polypeptide modeling toolkit"};
    app.require_subcommand(1);
    bool as_json = false;
    std::uint64_t seed = 1;
    app.add_flag("--json", as_json, "emit JSON instead of text/CSV");
    app.add_option("--seed", seed, "random seed for stochastic subcommands");

    // enumerate
    auto* cmd_enum = app.add_subcommand("enumerate", "enumerate self-avoiding codes");
    int enum_n = 3;
    bool enum_cis = false, enum_count_only = false;
    std::size_t enum_limit = 64;
    cmd_enum->add_option("--n", enum_n, "chain length in residues")->required();
    cmd_enum->add_flag("--cis", enum_cis, "include cis peptide bonds");
    cmd_enum->add_flag("--count-only", enum_count_only, "print counts without listing codes");
    cmd_enum->add_option("--limit", enum_limit, "maximum codes to list");

    // fold
    auto* cmd_fold = app.add_subcommand("fold", "search folds of a sequence");
    std::string fold_seq, fold_model = "hp", fold_trajectory;
    bool fold_exhaustive = false, fold_anneal = false, fold_cis = false;
    std::size_t fold_steps = 20000, fold_nmax = 8;
    double fold_tstart = 2.0, fold_tend = 0.05;
    cmd_fold->add_option("--sequence", fold_seq, "one-letter residue sequence")->required();
    cmd_fold->add_option("--model", fold_model, "energy model: hp, class, or a file");
    auto* opt_ex = cmd_fold->add_flag("--exhaustive", fold_exhaustive, "exact enumeration (default)");
    cmd_fold->add_flag("--anneal", fold_anneal, "simulated annealing search")->excludes(opt_ex);
    cmd_fold->add_flag("--cis", fold_cis, "include cis peptide bonds");
    cmd_fold->add_option("--steps", fold_steps, "annealing steps");
    cmd_fold->add_option("--t-start", fold_tstart, "annealing start temperature");
    cmd_fold->add_option("--t-end", fold_tend, "annealing end temperature");
    cmd_fold->add_option("--n-max", fold_nmax, "exhaustive enumeration size cap");
    cmd_fold->add_option("--trajectory", fold_trajectory, "write CSV trajectory to a file");

    // fit
    auto* cmd_fit = app.add_subcommand("fit", "fit a PDB backbone onto the lattice");
    std::string fit_pdb;
    double fit_scale = 1.53;
    cmd_fit->add_option("--pdb", fit_pdb, "input PDB file")->required();
    cmd_fit->add_option("--scale", fit_scale, "Angstrom per lattice bond");

    // rama
    auto* cmd_rama = app.add_subcommand("rama", "torsion angles and star quantization");
    std::string rama_pdb;
    bool rama_csv = false;
    cmd_rama->add_option("--pdb", rama_pdb, "input PDB file")->required();
    cmd_rama->add_flag("--csv", rama_csv, "CSV output (the default format)");

    // grover
    auto* cmd_grover = app.add_subcommand("grover", "quantum search capacities");
    bool grover_table = false;
    std::optional<std::uint64_t> grover_items;
    std::optional<int> grover_queries;
    cmd_grover->add_flag("--capacity-table", grover_table, "print the q=1..3 capacity table");
    cmd_grover->add_option("--items", grover_items, "database size N");
    cmd_grover->add_option("--queries", grover_queries, "number of quantum queries q");

    // table
    auto* cmd_table = app.add_subcommand("table", "amino-acid reference data");
    bool table_check = false;
    cmd_table->add_flag("--check", table_check, "run the class-structure checks");

    // lattice-info
    auto* cmd_lattice = app.add_subcommand("lattice-info", "bond vectors, angle, packing");

    // global flags may appear after the subcommand name too
    for (CLI::App* sub : {cmd_enum, cmd_fold, cmd_fit, cmd_rama, cmd_grover, cmd_table,
                          cmd_lattice})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints the message or help text
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (cmd_enum->parsed()) {
        if (enum_n < 1) throw latfold::domain_error("--n must be >= 1");
        latfold::EnergyModel empty;  // zero energies; every SA code is optimal
        latfold::FoldOptions opts;
        opts.allow_cis = enum_cis;
        opts.max_reported = enum_count_only ? 0 : enum_limit;
        opts.n_max = static_cast<std::size_t>(enum_n);
        std::vector<std::string> seq(static_cast<std::size_t>(enum_n), "X");
        latfold::FoldReport rep = latfold::exhaustive_fold(seq, empty, opts);
        if (as_json) {
            json out{{"n", enum_n},
                     {"cis", enum_cis},
                     {"total", rep.total_states},
                     {"self_avoiding", rep.states_examined}};
            if (!enum_count_only) {
                json codes = json::array();
                for (const auto& c : rep.optimal) codes.push_back(code_to_json(c));
                out["codes"] = codes;
            }
            std::cout << out.dump(2) << "\n";
        } else {
            std::printf("total %llu\nself-avoiding %llu\n",
                        static_cast<unsigned long long>(rep.total_states),
                        static_cast<unsigned long long>(rep.states_examined));
            if (!enum_count_only)
                for (const auto& c : rep.optimal) std::printf("%s\n", code_to_text(c).c_str());
        }
        return kExitOk;
    }

    if (cmd_fold->parsed()) {
        latfold::EnergyModel model = load_model(fold_model);
        std::vector<std::string> labels = sequence_labels(fold_seq, model);
        latfold::FoldReport rep;
        if (fold_anneal) {
            latfold::AnnealSchedule sched{fold_tstart, fold_tend, fold_steps};
            latfold::AnnealOptions opts;
            opts.allow_cis = fold_cis;
            std::ofstream traj;
            if (!fold_trajectory.empty()) {
                traj.open(fold_trajectory);
                if (!traj) throw latfold::parse_error("cannot write file: " + fold_trajectory);
                traj << "step,energy,temperature\n";
                opts.observer = [&traj](std::size_t step, double e, double t) {
                    traj << step << "," << e << "," << t << "\n";
                };
            }
            rep = latfold::anneal_fold(labels, model, sched, seed, opts);
        } else {
            latfold::FoldOptions opts;
            opts.allow_cis = fold_cis;
            opts.n_max = fold_nmax;
            rep = latfold::exhaustive_fold(labels, model, opts);
        }
        if (as_json) {
            std::cout << fold_report_json(rep).dump(2) << "\n";
        } else {
            std::printf("best_energy %.6g\noptimal_count %llu\nstates_examined %llu\n",
                        rep.best_energy, static_cast<unsigned long long>(rep.optimal_count),
                        static_cast<unsigned long long>(rep.states_examined));
            for (const auto& c : rep.optimal) std::printf("%s\n", code_to_text(c).c_str());
        }
        return kExitOk;
    }

    if (cmd_fit->parsed()) {
        latfold::ParsedChain parsed = latfold::parse_pdb_subset(read_file(fit_pdb));
        latfold::FitOptions opts;
        opts.scale_angstrom_per_bond = fit_scale;
        latfold::FitResult fit = latfold::fit_to_lattice(parsed, opts);
        if (as_json) {
            json codes = json::array();
            for (const auto& r : fit.code.residues)
                codes.push_back({{"aa", r.amino_acid},
                                 {"phi", r.phi_choice},
                                 {"psi", r.psi_choice},
                                 {"omega", r.omega == latfold::Omega::trans ? "trans" : "cis"}});
            json out{{"code", codes},
                     {"rmsd_angstrom", fit.rmsd_angstrom},
                     {"scale", fit.scale_angstrom_per_bond}};
            std::cout << out.dump(2) << "\n";
        } else {
            std::printf("rmsd_angstrom %.6f\nscale %.4f\ncode %s\n", fit.rmsd_angstrom,
                        fit.scale_angstrom_per_bond, code_to_text(fit.code).c_str());
        }
        return kExitOk;
    }

    if (cmd_rama->parsed()) {
        latfold::ParsedChain parsed = latfold::parse_pdb_subset(read_file(rama_pdb));
        latfold::AngleTable table = latfold::phi_psi_omega(latfold::backbone_of(parsed));
        if (as_json) {
            json rows = json::array();
            for (std::size_t i = 0; i < table.size(); ++i) {
                json row{{"residue_index", i + 1}};
                if (table[i].phi) row["phi"] = *table[i].phi;
                if (table[i].psi) row["psi"] = *table[i].psi;
                if (table[i].omega) row["omega"] = *table[i].omega;
                if (table[i].phi && table[i].psi) {
                    latfold::Star s = latfold::quantize(*table[i].phi, *table[i].psi);
                    row["star_phi"] = s.phi_star;
                    row["star_psi"] = s.psi_star;
                }
                rows.push_back(row);
            }
            std::cout << rows.dump(2) << "\n";
        } else {
            std::fputs(latfold::angle_table_csv(table).c_str(), stdout);
        }
        return kExitOk;
    }

    if (cmd_grover->parsed()) {
        if (grover_table || (!grover_items && !grover_queries)) {
            auto rows = latfold::alphabet_table();
            if (as_json) {
                json out = json::array();
                for (const auto& r : rows)
                    out.push_back({{"queries", r.queries},
                                   {"capacity", r.capacity},
                                   {"floor", r.floor_items},
                                   {"alphabet", r.alphabet}});
                std::cout << out.dump(2) << "\n";
            } else {
                for (const auto& r : rows)
                    std::printf("q=%d capacity=%.3f floor=%d alphabet=%s\n", r.queries,
                                r.capacity, r.floor_items, r.alphabet.c_str());
            }
            return kExitOk;
        }
        if (!grover_items || !grover_queries)
            throw CLI::ValidationError("grover", "--items and --queries go together");
        latfold::SearchInstance inst{*grover_items, *grover_queries, 0};
        double p = latfold::grover_simulate(inst);
        double closed =
            latfold::grover_success_closed_form(static_cast<double>(inst.items), inst.queries);
        if (as_json) {
            json out{{"items", inst.items},
                     {"queries", inst.queries},
                     {"success_probability", p},
                     {"failure_probability", 1.0 - p},
                     {"closed_form", closed}};
            std::cout << out.dump(2) << "\n";
        } else {
            std::printf("items %llu\nqueries %d\nsuccess_probability %.12f\n"
                        "failure_probability %.6e\n",
                        static_cast<unsigned long long>(inst.items), inst.queries, p, 1.0 - p);
        }
        return kExitOk;
    }

    if (cmd_table->parsed()) {
        if (table_check) {
            bool ok = true;
            auto check = [&](bool cond, const std::string& what) {
                std::printf("%s %s\n", cond ? "ok  " : "FAIL", what.c_str());
                ok = ok && cond;
            };
            auto [c1, c2] = latfold::class_partition();
            check(c1.size() == 10 && c2.size() == 10, "two classes of 10 each");
            auto balance = latfold::property_balance();
            bool balanced = balance.size() == 5;
            for (const auto& [prop, counts] : balance)
                balanced = balanced && counts.first == counts.second;
            check(balanced, "every property split equally between classes");
            bool heavier = true;
            for (const auto& [prop, means] : latfold::weight_ordering())
                heavier = heavier && means.first > means.second;
            check(heavier, "class I heavier than class II at the mean, per property");
            check(latfold::lookup("Pro").synthetase_class == latfold::SynthetaseClass::II,
                  "proline in class II");
            check(latfold::lookup("Cys").synthetase_class == latfold::SynthetaseClass::I,
                  "cysteine in class I");
            return ok ? kExitOk : kExitData;
        }
        if (as_json) {
            json out = json::array();
            for (const auto& r : latfold::amino_acid_table())
                out.push_back({{"code3", r.code3},
                               {"name", r.name},
                               {"property", latfold::to_string(r.property)},
                               {"weight", r.weight},
                               {"class", latfold::to_string(r.synthetase_class)}});
            std::cout << out.dump(2) << "\n";
        } else {
            std::fputs(latfold::amino_acid_csv().c_str(), stdout);
        }
        return kExitOk;
    }

    if (cmd_lattice->parsed()) {
        auto dirs = latfold::bond_directions(latfold::Parity::A, latfold::Frame::identity());
        double angle = 2.0 * std::atan(std::sqrt(2.0)) * 180.0 / M_PI;
        double diamond = latfold::packing_fraction_analytic(latfold::LatticeKind::diamond);
        double fcc = latfold::packing_fraction_analytic(latfold::LatticeKind::fcc);
        if (as_json) {
            json vecs = json::array();
            for (const auto& d : dirs)
                vecs.push_back({d.x.str(), d.y.str(), d.z.str()});
            json out{{"bond_vectors", vecs},
                     {"bond_angle_deg", angle},
                     {"packing_fraction", {{"diamond", diamond}, {"fcc", fcc}}}};
            std::cout << out.dump(2) << "\n";
        } else {
            for (std::size_t i = 0; i < 4; ++i)
                std::printf("e%zu %s\n", i + 1, dirs[i].str().c_str());
            std::printf("bond_angle_deg %.4f\npacking_diamond %.4f\npacking_fcc %.4f\n", angle,
                        diamond, fcc);
        }
        return kExitOk;
    }

    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const latfold::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
