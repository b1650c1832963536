#include <array>
#include <sys/wait.h>
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "latfold/chain.hpp"
#include "latfold/structure_io.hpp"

namespace {

struct CommandResult {
    int exit_code;
    std::string output;
};

CommandResult run_cli(const std::string& args) {
    std::string cmd = std::string(LATFOLD_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string write_temp_pdb() {
    latfold::ConformationCode code;
    for (int i = 0; i < 5; ++i)
        code.residues.push_back({"Ala", i % 3 + 1, (i + 1) % 3 + 1, latfold::Omega::trans});
    code.residues.front().phi_choice = 1;
    code.residues.back().psi_choice = 1;
    std::string path = "cli_test_chain.pdb";
    std::ofstream out(path);
    out << latfold::emit_pdb_subset(latfold::realize(code));
    return path;
}

}  // namespace

TEST_CASE("grover capacity table") {
    CommandResult r = run_cli("grover --capacity-table");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("4.000") != std::string::npos);
    CHECK(r.output.find("10.472") != std::string::npos);
    CHECK(r.output.find("20.196") != std::string::npos);

    CommandResult j = run_cli("--json grover --capacity-table");
    CHECK(j.exit_code == 0);
    auto doc = nlohmann::json::parse(j.output);
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 3);
    CHECK(doc[0]["floor"] == 4);
    CHECK(doc[1]["floor"] == 10);
    CHECK(doc[2]["floor"] == 20);
    CHECK(std::fabs(doc[1]["capacity"].get<double>() - 10.47) < 0.01);
}

TEST_CASE("grover simulation") {
    CommandResult j = run_cli("--json grover --items 10 --queries 2");
    CHECK(j.exit_code == 0);
    auto doc = nlohmann::json::parse(j.output);
    double fail = doc["failure_probability"].get<double>();
    CHECK(fail > 1.0e-3);
    CHECK(fail < 2.0e-3);
}

TEST_CASE("lattice-info") {
    CommandResult r = run_cli("lattice-info");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("109.4712") != std::string::npos);
    CHECK(r.output.find("0.3401") != std::string::npos);
    CHECK(r.output.find("0.7405") != std::string::npos);
    CHECK(r.output.find("1/4") != std::string::npos);

    CommandResult j = run_cli("--json lattice-info");
    auto doc = nlohmann::json::parse(j.output);
    CHECK(doc["bond_vectors"].size() == 4);
    CHECK(std::fabs(doc["bond_angle_deg"].get<double>() - 109.4712) < 1e-3);
}

TEST_CASE("enumerate") {
    CommandResult r = run_cli("enumerate --n 3 --count-only");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("total 81") != std::string::npos);
    CHECK(r.output.find("self-avoiding 81") != std::string::npos);

    CommandResult j = run_cli("--json enumerate --n 5 --count-only");
    auto doc = nlohmann::json::parse(j.output);
    CHECK(doc["total"] == 6561);
    CHECK(doc["self_avoiding"] == 6557);

    CommandResult listed = run_cli("--json enumerate --n 2 --limit 100");
    auto ldoc = nlohmann::json::parse(listed.output);
    CHECK(ldoc["codes"].size() == 9);
}

TEST_CASE("fold exhaustive and anneal") {
    CommandResult r = run_cli("--json fold --sequence HHHHHH --model hp --exhaustive");
    CHECK(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.output);
    CHECK(doc["best_energy"] == -1.0);
    CHECK(doc["total_states"] == 59049);

    CommandResult a =
        run_cli("--seed 3 --json fold --sequence HHHHHH --anneal --steps 4000");
    auto adoc = nlohmann::json::parse(a.output);
    CHECK(adoc["best_energy"].get<double>() >= -1.0);
    CHECK(adoc["seed"] == 3);

    // identical argv + seed give byte-identical output
    CommandResult b =
        run_cli("--seed 3 --json fold --sequence HHHHHH --anneal --steps 4000");
    CHECK(a.output == b.output);

    // global flags are accepted after the subcommand as well
    CommandResult c2 =
        run_cli("fold --sequence HHHHHH --anneal --steps 4000 --seed 3 --json");
    CHECK(c2.output == a.output);

    // annealing can log its trajectory
    CommandResult t = run_cli(
        "fold --sequence HHPH --anneal --steps 50 --seed 1 --trajectory cli_test_traj.csv");
    CHECK(t.exit_code == 0);
    std::ifstream traj("cli_test_traj.csv");
    REQUIRE(traj.good());
    std::string header;
    std::getline(traj, header);
    CHECK(header == "step,energy,temperature");
    int rows = 0;
    for (std::string line; std::getline(traj, line);)
        if (!line.empty()) ++rows;
    CHECK(rows == 50);
    traj.close();
    std::remove("cli_test_traj.csv");

    // class-keyed model accepts one-letter amino acids
    CommandResult c = run_cli("--json fold --sequence GWAW --model class");
    auto cdoc = nlohmann::json::parse(c.output);
    CHECK(cdoc["best_energy"].get<double>() <= 0.0);

    // energy models load from files
    {
        std::ofstream model("cli_test_model.txt");
        model << "key identity\npair H H -2\n";
    }
    CommandResult fm = run_cli("--json fold --sequence HHHHHH --model cli_test_model.txt");
    auto fmdoc = nlohmann::json::parse(fm.output);
    CHECK(fmdoc["best_energy"] == -2.0);
    std::remove("cli_test_model.txt");
    CHECK(run_cli("fold --sequence HH --model no_such_model.txt").exit_code == 2);
}

TEST_CASE("fit and rama") {
    std::string pdb = write_temp_pdb();

    CommandResult fit = run_cli("--json fit --pdb " + pdb);
    CHECK(fit.exit_code == 0);
    auto fdoc = nlohmann::json::parse(fit.output);
    CHECK(fdoc["code"].size() == 5);
    CHECK(fdoc["scale"] == 1.53);
    CHECK(fdoc["rmsd_angstrom"].get<double>() < 2e-3);
    CHECK(fdoc["code"][1]["phi"] == 2);

    CommandResult csv = run_cli("rama --pdb " + pdb + " --csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.output.rfind("residue_index,phi,psi,omega,star_phi,star_psi", 0) == 0);

    CommandResult rj = run_cli("--json rama --pdb " + pdb);
    CHECK(rj.exit_code == 0);
    auto rdoc = nlohmann::json::parse(rj.output);
    REQUIRE(rdoc.size() == 5);
    CHECK_FALSE(rdoc[0].contains("phi"));  // first residue's phi is undefined
    CHECK(rdoc[1].contains("phi"));
    CHECK(rdoc[1]["star_phi"].is_number_integer());

    CommandResult missing = run_cli("fit --pdb does_not_exist.pdb");
    CHECK(missing.exit_code == 2);

    std::remove(pdb.c_str());
}

TEST_CASE("table") {
    CommandResult r = run_cli("table");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("Gly,Glycine,non-polar,75,II") != std::string::npos);
    CHECK(r.output.find("Trp,Tryptophan,ring,204,I") != std::string::npos);

    CommandResult check = run_cli("table --check");
    CHECK(check.exit_code == 0);
    CHECK(check.output.find("FAIL") == std::string::npos);

    CommandResult j = run_cli("--json table");
    auto doc = nlohmann::json::parse(j.output);
    CHECK(doc.size() == 20);
}

TEST_CASE("usage errors exit with code 1") {
    CHECK(run_cli("frobnicate").exit_code == 1);
    CHECK(run_cli("fold").exit_code == 1);          // missing --sequence
    CHECK(run_cli("enumerate --bogus 3").exit_code == 1);
    CHECK(run_cli("--help").exit_code == 0);
}
