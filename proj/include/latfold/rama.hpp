#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "latfold/amino_acids.hpp"
#include "latfold/chain.hpp"
#include "latfold/errors.hpp"
#include "latfold/vec3d.hpp"

namespace latfold {

// Signed torsion angle of p1-p2-p3-p4 in degrees, in (-180, 180].
// Same orientation convention as the exact classify_torsion predicate.
inline double dihedral(const Vec3d& p1, const Vec3d& p2, const Vec3d& p3, const Vec3d& p4) {
    Vec3d b1 = p2 - p1;
    Vec3d b2 = p3 - p2;
    Vec3d b3 = p4 - p3;
    Vec3d n1 = cross(b1, b2);
    Vec3d n2 = cross(b2, b3);
    double nb1 = norm(b1), nb2 = norm(b2), nb3 = norm(b3);
    if (nb1 == 0.0 || nb2 == 0.0 || nb3 == 0.0 || norm(n1) <= 1e-12 * nb1 * nb2 ||
        norm(n2) <= 1e-12 * nb2 * nb3)
        throw undefined_dihedral_error("collinear points in dihedral");
    double y = dot(cross(n1, n2), b2) / nb2;
    double x = dot(n1, n2);
    double angle = std::atan2(y, x) * 180.0 / M_PI;
    if (angle <= -180.0 + 1e-9) angle = 180.0;  // keep the range half-open
    return angle;
}

// Backbone atoms of one residue, as plain doubles. Any length unit works;
// torsions are scale invariant.
struct BackboneResidue {
    Vec3d n, ca, c;
};

struct AngleRow {
    std::optional<double> phi;    // undefined for the first residue
    std::optional<double> psi;    // undefined for the last residue
    std::optional<double> omega;  // peptide bond following this residue
};

using AngleTable = std::vector<AngleRow>;

// phi_i = C(i-1)-N(i)-CA(i)-C(i); psi_i = N(i)-CA(i)-C(i)-N(i+1);
// omega_i = CA(i)-C(i)-N(i+1)-CA(i+1). Terminal residues get the
// defined subset.
inline AngleTable phi_psi_omega(const std::vector<BackboneResidue>& chain) {
    if (chain.size() < 2)
        throw incomplete_residue_error("need at least two residues to measure torsions");
    AngleTable table(chain.size());
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i > 0)
            table[i].phi = dihedral(chain[i - 1].c, chain[i].n, chain[i].ca, chain[i].c);
        if (i + 1 < chain.size()) {
            table[i].psi = dihedral(chain[i].n, chain[i].ca, chain[i].c, chain[i + 1].n);
            table[i].omega =
                dihedral(chain[i].ca, chain[i].c, chain[i + 1].n, chain[i + 1].ca);
        }
    }
    return table;
}

inline std::vector<BackboneResidue> backbone_of(const RealizedChain& chain) {
    std::vector<BackboneResidue> out;
    out.reserve(chain.residues.size());
    for (const RealizedResidue& r : chain.residues)
        out.push_back({to_vec3d(r.n), to_vec3d(r.ca), to_vec3d(r.c)});
    return out;
}

inline AngleTable phi_psi_omega(const RealizedChain& chain) {
    return phi_psi_omega(backbone_of(chain));
}

// One of the nine discrete (phi, psi) states realizable on the lattice.
struct Star {
    int phi_star;  // -60, 60 or 180
    int psi_star;

    friend bool operator==(const Star&, const Star&) = default;
    friend bool operator<(const Star& a, const Star& b) {
        return a.phi_star != b.phi_star ? a.phi_star < b.phi_star : a.psi_star < b.psi_star;
    }
};

inline double circular_distance_deg(double a, double b) {
    double d = std::fmod(std::fabs(a - b), 360.0);
    return d > 180.0 ? 360.0 - d : d;
}

// Nearest grid value per axis under circular distance. Exact midpoints
// (60 degrees away from two stars) break toward 180 first, then -60;
// they cannot occur for lattice-realized chains.
inline int quantize_axis(double angle) {
    static const int grid[3] = {180, -60, 60};
    int best = grid[0];
    double best_d = circular_distance_deg(angle, 180.0);
    for (int g : {-60, 60}) {
        double d = circular_distance_deg(angle, g);
        if (d < best_d - 1e-12) {
            best = g;
            best_d = d;
        }
    }
    return best;
}

inline Star quantize(double phi, double psi) {
    if (!std::isfinite(phi) || !std::isfinite(psi))
        throw domain_error("quantize needs finite angles");
    return {quantize_axis(phi), quantize_axis(psi)};
}

// The frozen choice <-> star calibration: choice 1 realizes 180 degrees,
// choice 2 realizes -60, choice 3 realizes +60, on both axes, in every
// chain context.
inline int star_of_choice(int choice) {
    switch (choice) {
        case 1: return 180;
        case 2: return -60;
        case 3: return 60;
        default: throw domain_error("choice must be 1..3");
    }
}

inline int choice_of_star(int star) {
    switch (star) {
        case 180: return 1;
        case -60: return 2;
        case 60: return 3;
        default: throw domain_error("star must be one of {-60, 60, 180}");
    }
}

// Stars an amino acid can occupy: glycine all nine (its map has inversion
// symmetry), proline only phi = -60 (the imino ring blocks N-CA rotation),
// everything else loses (60, -60) to the R-group steric conflict.
inline std::vector<Star> allowed_stars(const std::string& amino_acid) {
    const AminoAcidRecord& rec = lookup(amino_acid);
    std::vector<Star> out;
    for (int phi : {-60, 60, 180})
        for (int psi : {-60, 60, 180}) {
            if (rec.code3 == "Pro" && phi != -60) continue;
            if (rec.code3 != "Gly" && phi == 60 && psi == -60) continue;
            out.push_back({phi, psi});
        }
    return out;
}

// CSV feed for a Ramachandran-style scatter plot. Undefined angles are
// left blank; stars are quantized from the defined pair only.
inline std::string angle_table_csv(const AngleTable& table) {
    std::string out = "residue_index,phi,psi,omega,star_phi,star_psi\n";
    char buf[160];
    for (std::size_t i = 0; i < table.size(); ++i) {
        const AngleRow& row = table[i];
        auto fmt = [&](const std::optional<double>& v) {
            if (!v) return std::string();
            char b[32];
            std::snprintf(b, sizeof b, "%.4f", *v);
            return std::string(b);
        };
        std::string star_phi, star_psi;
        if (row.phi && row.psi) {
            Star s = quantize(*row.phi, *row.psi);
            star_phi = std::to_string(s.phi_star);
            star_psi = std::to_string(s.psi_star);
        }
        std::snprintf(buf, sizeof buf, "%zu,%s,%s,%s,%s,%s\n", i + 1, fmt(row.phi).c_str(),
                      fmt(row.psi).c_str(), fmt(row.omega).c_str(), star_phi.c_str(),
                      star_psi.c_str());
        out += buf;
    }
    return out;
}

}  // namespace latfold
