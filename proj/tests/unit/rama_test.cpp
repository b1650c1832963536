#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "latfold/rama.hpp"

using namespace latfold;

namespace {

ConformationCode uniform_code(std::size_t n, int phi, int psi) {
    ConformationCode code;
    for (std::size_t i = 0; i < n; ++i)
        code.residues.push_back({"Ala", phi, psi, Omega::trans});
    return code;
}

}  // namespace

TEST_CASE("dihedral: cis, trans, staggered") {
    // eclipsed across p2-p3: 0 degrees
    CHECK(dihedral({1, 1, 0}, {0, 0, 0}, {0, 0, 1}, {1, 1, 1}) == doctest::Approx(0.0));
    // anti: 180 degrees
    CHECK(dihedral({1, 1, 0}, {0, 0, 0}, {0, 0, 1}, {-1, -1, 1}) == doctest::Approx(180.0));

    // staggered tetrahedral quadruple built from the bond directions
    auto e = [](int i) { return to_vec3d(bond_basis()[static_cast<std::size_t>(i - 1)]); };
    Vec3d p2{0, 0, 0};
    Vec3d p1 = p2 + e(2);   // previous site
    Vec3d p3 = p2 + e(1);   // bond along e1
    Vec3d p4 = p3 - e(3);   // one of the staggered continuations
    double ang = dihedral(p1, p2, p3, p4);
    CHECK(std::fabs(std::fabs(ang) - 60.0) < 1e-9);

    // the signed torsion does not depend on the traversal direction;
    // mirror reflection is what negates it
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int t = 0; t < 200; ++t) {
        Vec3d a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)};
        Vec3d c{u(rng), u(rng), u(rng)}, d{u(rng), u(rng), u(rng)};
        double fwd;
        try {
            fwd = dihedral(a, b, c, d);
        } catch (const undefined_dihedral_error&) {
            continue;
        }
        CHECK(circular_distance_deg(fwd, dihedral(d, c, b, a)) < 1e-9);
        auto mirror = [](const Vec3d& p) { return Vec3d{-p.x, p.y, p.z}; };
        CHECK(circular_distance_deg(-fwd, dihedral(mirror(a), mirror(b), mirror(c), mirror(d))) <
              1e-9);
    }

    CHECK_THROWS_AS(dihedral({0, 0, 0}, {0, 0, 0}, {1, 0, 0}, {1, 1, 0}),
                    undefined_dihedral_error);
    CHECK_THROWS_AS(dihedral({2, 0, 0}, {1, 0, 0}, {0, 0, 0}, {-1, 0, 0}),
                    undefined_dihedral_error);
}

TEST_CASE("lattice chains measure exactly on the star grid") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        ConformationCode code = uniform_code(5, 1, 1);
        for (auto& r : code.residues) {
            r.phi_choice = static_cast<int>(rng() % 3) + 1;
            r.psi_choice = static_cast<int>(rng() % 3) + 1;
            if (trial % 2 && rng() % 4 == 0) r.omega = Omega::cis;
        }
        AngleTable t = phi_psi_omega(realize(code));
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i].phi) {
                CHECK(circular_distance_deg(*t[i].phi,
                                            star_of_choice(code.residues[i].phi_choice)) < 1e-9);
            }
            if (t[i].psi) {
                CHECK(circular_distance_deg(*t[i].psi,
                                            star_of_choice(code.residues[i].psi_choice)) < 1e-9);
            }
            if (t[i].omega) {
                double want = code.residues[i].omega == Omega::trans ? 180.0 : 0.0;
                CHECK(circular_distance_deg(*t[i].omega, want) < 1e-9);
            }
        }
    }
}

TEST_CASE("the fully extended chain is the all-(1,1) code") {
    std::set<std::pair<int, int>> extended_pairs;
    double best_span = -1;
    std::pair<int, int> best_pair{0, 0};
    for (int phi = 1; phi <= 3; ++phi)
        for (int psi = 1; psi <= 3; ++psi) {
            RealizedChain ch = realize(uniform_code(6, phi, psi));
            AngleTable t = phi_psi_omega(ch);
            bool all_extended = true;
            for (const AngleRow& row : t) {
                if (row.phi) all_extended &= circular_distance_deg(*row.phi, 180.0) < 1e-9;
                if (row.psi) all_extended &= circular_distance_deg(*row.psi, 180.0) < 1e-9;
            }
            if (all_extended) extended_pairs.insert({phi, psi});
            double span = norm(to_vec3d(ch.residues.back().ca - ch.residues.front().ca));
            if (span > best_span) {
                best_span = span;
                best_pair = {phi, psi};
            }
        }
    CHECK(extended_pairs == std::set<std::pair<int, int>>{{1, 1}});
    CHECK(best_pair == std::pair<int, int>{1, 1});  // extension is maximal
}

TEST_CASE("quantize") {
    CHECK(quantize(-57, -47) == Star{-60, -60});  // alpha-helical region
    CHECK(quantize(180, 180) == Star{180, 180});
    CHECK(quantize(-170, 175) == Star{180, 180});  // wraparound
    CHECK(quantize(59, 61) == Star{60, 60});

    // idempotent on star values
    for (int a : {-60, 60, 180})
        for (int b : {-60, 60, 180}) CHECK(quantize(a, b) == Star{a, b});

    // midpoint ties: toward 180 first, then toward -60
    CHECK(quantize(120, -120) == Star{180, 180});
    CHECK(quantize(0, 0) == Star{-60, -60});

    CHECK_THROWS_AS(quantize(std::nan(""), 0.0), domain_error);
}

TEST_CASE("point inversion negates phi and psi") {
    std::mt19937_64 rng(37);
    ConformationCode code = uniform_code(5, 1, 1);
    for (auto& r : code.residues) {
        r.phi_choice = static_cast<int>(rng() % 3) + 1;
        r.psi_choice = static_cast<int>(rng() % 3) + 1;
    }
    std::vector<BackboneResidue> fwd = backbone_of(realize(code));
    std::vector<BackboneResidue> inv = fwd;
    for (BackboneResidue& r : inv) {
        r.n = -r.n;
        r.ca = -r.ca;
        r.c = -r.c;
    }
    AngleTable tf = phi_psi_omega(fwd), ti = phi_psi_omega(inv);
    for (std::size_t i = 0; i < tf.size(); ++i) {
        if (tf[i].phi) CHECK(circular_distance_deg(*tf[i].phi, -*ti[i].phi) < 1e-9);
        if (tf[i].psi) CHECK(circular_distance_deg(*tf[i].psi, -*ti[i].psi) < 1e-9);
    }
}

TEST_CASE("allowed stars per amino acid") {
    CHECK(allowed_stars("Gly").size() == 9);
    auto pro = allowed_stars("Pro");
    CHECK(pro.size() == 3);
    for (const Star& s : pro) CHECK(s.phi_star == -60);
    auto ala = allowed_stars("Ala");
    CHECK(ala.size() == 8);
    for (const Star& s : ala) CHECK_FALSE(s == Star{60, -60});
    CHECK(allowed_stars("TRP").size() == 8);  // case-insensitive lookup
    CHECK_THROWS_AS(allowed_stars("Xyz"), lookup_error);
}

TEST_CASE("choice/star calibration table is a bijection") {
    for (int c : {1, 2, 3}) CHECK(choice_of_star(star_of_choice(c)) == c);
    CHECK(star_of_choice(1) == 180);
    CHECK(star_of_choice(2) == -60);
    CHECK(star_of_choice(3) == 60);
    CHECK_THROWS_AS(star_of_choice(0), domain_error);
    CHECK_THROWS_AS(choice_of_star(90), domain_error);
}

TEST_CASE("angle table CSV") {
    RealizedChain ch = realize(uniform_code(3, 1, 1));
    std::string csv = angle_table_csv(phi_psi_omega(ch));
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "residue_index,phi,psi,omega,star_phi,star_psi");
    std::getline(in, line);
    CHECK(line.rfind("1,,", 0) == 0);  // first residue has no phi
    std::getline(in, line);
    CHECK(line.find("180") != std::string::npos);
    int rows = 2;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 3);
}
