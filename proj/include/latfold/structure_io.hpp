#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "latfold/amino_acids.hpp"
#include "latfold/chain.hpp"
#include "latfold/errors.hpp"
#include "latfold/rama.hpp"
#include "latfold/vec3d.hpp"

namespace latfold {

struct ParsedResidue {
    std::string name;  // 3-letter residue name as it appeared
    int seq = 0;
    Vec3d n, ca, c;  // Angstrom
    std::optional<Vec3d> o;
};

struct ParsedChain {
    char chain_id = ' ';
    std::vector<ParsedResidue> residues;
};

namespace detail {

inline std::string field(const std::string& line, std::size_t from1, std::size_t to1) {
    // 1-based inclusive column range, blank-padded reads past the end
    std::string out;
    for (std::size_t c = from1; c <= to1; ++c)
        out += c - 1 < line.size() ? line[c - 1] : ' ';
    return out;
}

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline double parse_coord(const std::string& text, long line_no) {
    const std::string t = trim(text);
    if (t.empty()) throw parse_error("missing coordinate field", line_no);
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(t, &pos);
    } catch (const std::exception&) {
        throw parse_error("non-numeric coordinate '" + t + "'", line_no);
    }
    if (pos != t.size()) throw parse_error("non-numeric coordinate '" + t + "'", line_no);
    return v;
}

}  // namespace detail

// Minimal PDB ATOM-record reader: backbone N/CA/C plus O of the first
// chain identifier encountered. Insertion codes are rejected; alternate
// locations other than blank or 'A' are skipped; everything else in the
// file is ignored.
inline ParsedChain parse_pdb_subset(std::string_view text) {
    ParsedChain chain;
    bool have_chain = false;
    // collect per residue number
    struct Partial {
        std::string name;
        int seq;
        std::optional<Vec3d> n, ca, c, o;
    };
    std::vector<Partial> partials;

    long line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string line(text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                         : eol - pos));
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (line.rfind("ATOM  ", 0) != 0) continue;
        if (line.size() < 54) throw parse_error("ATOM record too short", line_no);

        char alt = line[16];
        if (alt != ' ' && alt != 'A') continue;
        char icode = line[26];
        if (icode != ' ') throw parse_error("insertion codes are not supported", line_no);

        char chain_id = line[21];
        if (!have_chain) {
            chain.chain_id = chain_id;
            have_chain = true;
        } else if (chain_id != chain.chain_id) {
            continue;  // only the first chain
        }

        std::string atom = detail::trim(detail::field(line, 13, 16));
        if (atom != "N" && atom != "CA" && atom != "C" && atom != "O") continue;

        std::string resname = detail::trim(detail::field(line, 18, 20));
        std::string seq_text = detail::trim(detail::field(line, 23, 26));
        int seq = 0;
        try {
            seq = std::stoi(seq_text);
        } catch (const std::exception&) {
            throw parse_error("bad residue number '" + seq_text + "'", line_no);
        }
        Vec3d p{detail::parse_coord(detail::field(line, 31, 38), line_no),
                detail::parse_coord(detail::field(line, 39, 46), line_no),
                detail::parse_coord(detail::field(line, 47, 54), line_no)};

        if (partials.empty() || partials.back().seq != seq) {
            if (!partials.empty() && seq < partials.back().seq)
                throw parse_error("residues out of order", line_no);
            partials.push_back({resname, seq, {}, {}, {}, {}});
        }
        Partial& cur = partials.back();
        auto put = [&](std::optional<Vec3d>& slot) {
            if (!slot) slot = p;  // keep the first occurrence
        };
        if (atom == "N") put(cur.n);
        else if (atom == "CA") put(cur.ca);
        else if (atom == "C") put(cur.c);
        else put(cur.o);
    }

    if (partials.empty()) throw empty_chain_error("no ATOM records found");
    for (const auto& part : partials) {
        if (!part.n || !part.ca || !part.c)
            throw incomplete_residue_error("residue " + std::to_string(part.seq) +
                                           " is missing one of N/CA/C");
        chain.residues.push_back({part.name, part.seq, *part.n, *part.ca, *part.c, part.o});
    }
    return chain;
}

// Lattice coordinates are in unit-cell edges with bond length sqrt(3)/4,
// so Angstrom = cell * 4 * scale / sqrt(3) for a given bond length scale.
inline double cell_to_angstrom_factor(double scale_angstrom_per_bond) {
    return 4.0 * scale_angstrom_per_bond / std::sqrt(3.0);
}

inline std::string emit_pdb_subset(const RealizedChain& chain,
                                   double scale_angstrom_per_bond = 1.53) {
    if (scale_angstrom_per_bond <= 0) throw domain_error("scale must be positive");
    const double f = cell_to_angstrom_factor(scale_angstrom_per_bond);
    std::string out;
    char buf[96];
    int serial = 1;
    auto emit_atom = [&](const char* name, const std::string& res, int seq, const Rat3& p) {
        std::snprintf(buf, sizeof buf,
                      "ATOM  %5d  %-3s %3s A%4d    %8.3f%8.3f%8.3f  1.00  0.00\n", serial++,
                      name, res.c_str(), seq, f * p.x.to_double(), f * p.y.to_double(),
                      f * p.z.to_double());
        out += buf;
    };
    for (std::size_t i = 0; i < chain.residues.size(); ++i) {
        const RealizedResidue& r = chain.residues[i];
        std::string res = chain.code.residues[i].amino_acid;
        for (char& ch : res) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        if (res.size() > 3) res.resize(3);
        emit_atom("N", res, static_cast<int>(i + 1), r.n);
        emit_atom("CA", res, static_cast<int>(i + 1), r.ca);
        emit_atom("C", res, static_cast<int>(i + 1), r.c);
        if (r.o) emit_atom("O", res, static_cast<int>(i + 1), *r.o);
    }
    out += "TER\n";
    return out;
}

struct Superposition {
    Mat3d rotation;
    Vec3d translation;
};

namespace detail {

inline void require_well_conditioned(const std::vector<Vec3d>& pts, const Vec3d& centroid) {
    std::array<double, 9> cov{};
    for (const Vec3d& p : pts) {
        Vec3d d = p - centroid;
        const double v[3] = {d.x, d.y, d.z};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) cov[static_cast<std::size_t>(3 * i + j)] += v[i] * v[j];
    }
    std::array<double, 3> ev;
    std::array<double, 9> vecs;
    jacobi_eigen<3>(cov, ev, vecs);
    std::sort(ev.begin(), ev.end());
    if (ev[2] <= 0 || ev[1] <= 1e-12 * ev[2])
        throw conditioning_error("point set is collinear or coincident");
}

}  // namespace detail

// Least-squares rigid superposition of A onto B (proper rotation only,
// reflections excluded) via the quaternion eigenvalue method, plus the
// resulting RMSD.
inline std::pair<Superposition, double> superpose(const std::vector<Vec3d>& a,
                                                  const std::vector<Vec3d>& b) {
    if (a.size() != b.size()) throw domain_error("superpose needs equal-length point lists");
    const std::size_t n = a.size();
    if (n < 3) throw domain_error("superpose needs at least 3 points");

    Vec3d ca{0, 0, 0}, cb{0, 0, 0};
    for (std::size_t i = 0; i < n; ++i) {
        ca = ca + a[i];
        cb = cb + b[i];
    }
    ca = (1.0 / static_cast<double>(n)) * ca;
    cb = (1.0 / static_cast<double>(n)) * cb;
    detail::require_well_conditioned(a, ca);
    detail::require_well_conditioned(b, cb);

    double s[3][3] = {};
    for (std::size_t i = 0; i < n; ++i) {
        Vec3d p = a[i] - ca, q = b[i] - cb;
        const double pv[3] = {p.x, p.y, p.z}, qv[3] = {q.x, q.y, q.z};
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) s[r][c] += pv[r] * qv[c];
    }
    std::array<double, 16> key = {
        s[0][0] + s[1][1] + s[2][2], s[1][2] - s[2][1], s[2][0] - s[0][2], s[0][1] - s[1][0],
        s[1][2] - s[2][1], s[0][0] - s[1][1] - s[2][2], s[0][1] + s[1][0], s[2][0] + s[0][2],
        s[2][0] - s[0][2], s[0][1] + s[1][0], -s[0][0] + s[1][1] - s[2][2], s[1][2] + s[2][1],
        s[0][1] - s[1][0], s[2][0] + s[0][2], s[1][2] + s[2][1], -s[0][0] - s[1][1] + s[2][2]};
    std::array<double, 4> ev;
    std::array<double, 16> vecs;
    detail::jacobi_eigen<4>(key, ev, vecs);
    int best = 0;
    for (int i = 1; i < 4; ++i)
        if (ev[static_cast<std::size_t>(i)] > ev[static_cast<std::size_t>(best)]) best = i;
    double w = vecs[static_cast<std::size_t>(0 * 4 + best)];
    double x = vecs[static_cast<std::size_t>(1 * 4 + best)];
    double y = vecs[static_cast<std::size_t>(2 * 4 + best)];
    double z = vecs[static_cast<std::size_t>(3 * 4 + best)];
    double qn = std::sqrt(w * w + x * x + y * y + z * z);
    w /= qn;
    x /= qn;
    y /= qn;
    z /= qn;

    Superposition sp;
    sp.rotation.m = {1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
                     2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
                     2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)};
    sp.translation = cb - sp.rotation.apply(ca);

    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Vec3d d = sp.rotation.apply(a[i]) + sp.translation - b[i];
        ss += dot(d, d);
    }
    double rmsd = std::sqrt(std::max(0.0, ss / static_cast<double>(n)));
    return {sp, rmsd};
}

struct FitOptions {
    double scale_angstrom_per_bond = 1.53;
    RealizeOptions realize;
};

struct FitResult {
    ConformationCode code;
    double rmsd_angstrom = 0;
    double scale_angstrom_per_bond = 0;
    Superposition superposition;  // realized (Angstrom) -> input
};

inline std::vector<BackboneResidue> backbone_of(const ParsedChain& chain) {
    std::vector<BackboneResidue> out;
    out.reserve(chain.residues.size());
    for (const ParsedResidue& r : chain.residues) out.push_back({r.n, r.ca, r.c});
    return out;
}

// Embed a real backbone on the lattice: measure torsions, quantize each
// (phi, psi) to its star and each omega to trans (|omega| > 90) or cis,
// translate stars to choices through the frozen calibration, realize, and
// score the distortion by superposing the realized CA trace onto the input.
// The first residue's phi and the last residue's psi are not measurable;
// they default to choice 1.
inline FitResult fit_to_lattice(const ParsedChain& parsed, const FitOptions& opts = {}) {
    const std::size_t n = parsed.residues.size();
    if (n < 3) throw domain_error("fit needs at least 3 residues");
    AngleTable angles = phi_psi_omega(backbone_of(parsed));

    ConformationCode code;
    code.chirality = Chirality::L;
    for (std::size_t i = 0; i < n; ++i) {
        ResidueCode rc;
        rc.amino_acid = normalize_code3(parsed.residues[i].name);
        rc.phi_choice = angles[i].phi ? choice_of_star(quantize_axis(*angles[i].phi)) : 1;
        rc.psi_choice = angles[i].psi ? choice_of_star(quantize_axis(*angles[i].psi)) : 1;
        rc.omega = angles[i].omega && circular_distance_deg(*angles[i].omega, 180.0) > 90.0
                       ? Omega::cis
                       : Omega::trans;
        code.residues.push_back(std::move(rc));
    }

    RealizedChain realized = realize(code, opts.realize);
    const double f = cell_to_angstrom_factor(opts.scale_angstrom_per_bond);
    std::vector<Vec3d> model, target;
    model.reserve(n);
    target.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        model.push_back(f * to_vec3d(realized.residues[i].ca));
        target.push_back(parsed.residues[i].ca);
    }
    auto [sp, rmsd] = superpose(model, target);
    return {std::move(code), rmsd, opts.scale_angstrom_per_bond, sp};
}

}  // namespace latfold
