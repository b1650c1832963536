#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "latfold/errors.hpp"
#include "latfold/geometry.hpp"

namespace latfold {

enum class Omega { trans, cis };
enum class Chirality { L, D };
enum class ResidueChirality { L, D, achiral };

// One residue's worth of fold instructions: which of the three torsion
// states each rotatable bond takes (1..3) and whether the peptide bond
// that FOLLOWS this residue is trans or cis. The last residue's omega
// never has a following peptide bond and is ignored.
struct ResidueCode {
    std::string amino_acid;  // 3-letter code, or a free label (e.g. "H"/"P")
    int phi_choice = 1;      // 1..3
    int psi_choice = 1;      // 1..3
    Omega omega = Omega::trans;

    friend bool operator==(const ResidueCode&, const ResidueCode&) = default;
};

// The chain's structural program: one global stereoisomer, then a
// residue-by-residue list of discrete placements.
struct ConformationCode {
    std::vector<ResidueCode> residues;
    Chirality chirality = Chirality::L;

    friend bool operator==(const ConformationCode&, const ConformationCode&) = default;
};

struct RealizedResidue {
    Rat3 n, ca, c;
    std::optional<Rat3> o;       // carbonyl oxygen, decoration only
    std::optional<Rat3> r_site;  // virtual side-chain site
};

// Exact coordinates produced from a code, plus the bookkeeping needed to
// extend the chain: the dangling next-N position selected by the last
// residue's psi choice, and the frame/parity at that site.
struct RealizedChain {
    std::vector<RealizedResidue> residues;
    ConformationCode code;
    Rat3 next_n;          // where the next residue's N would sit
    Frame final_frame;    // lattice frame at next_n (rotated by cis flips)
    Parity final_parity;  // sublattice parity of next_n

    std::size_t size() const { return residues.size(); }
};

struct RealizeOptions {
    bool with_oxygen = false;
    bool with_r_site = false;
    // Carbonyl offset = carbonyl_scale * (sum of the two free directions
    // at C). The sum has exact length 1/2 cell, so the default 7/10 puts
    // O at 0.35 cell = 0.81 lattice bonds from C; an exactly 0.8-bond
    // offset has irrational coordinates and cannot be represented.
    Rational carbonyl_scale{7, 10};
};

// The three torsion states a rotatable bond can take on the lattice.
// Their fixed order defines the choice labels: choice 1 = 180 degrees,
// choice 2 = -60, choice 3 = +60. This is the calibration table used by
// the Ramachandran round trip; it never depends on chain context.
enum class TorsionState { deg180 = 0, deg_m60 = 1, deg_p60 = 2 };

inline int torsion_state_degrees(TorsionState s) {
    switch (s) {
        case TorsionState::deg180: return 180;
        case TorsionState::deg_m60: return -60;
        default: return 60;
    }
}

// Exact classification of the torsion defined by three consecutive bond
// vectors, matching the sign convention of the floating-point dihedral:
// positive sign of det[n1 n2 b2]-style triple product means +60.
inline TorsionState classify_torsion(const Rat3& b1, const Rat3& b2, const Rat3& b3) {
    Rat3 n1 = cross(b1, b2);
    Rat3 n2 = cross(b2, b3);
    Rational s = dot(cross(n1, n2), b2);
    if (s.sign() > 0) return TorsionState::deg_p60;
    if (s.sign() < 0) return TorsionState::deg_m60;
    if (dot(n1, n2).sign() < 0) return TorsionState::deg180;
    throw undefined_dihedral_error("degenerate torsion in lattice stepping");
}

namespace detail {

// Walking state between residues: position and direction of the incoming
// N->CA bond, plus parity/frame bookkeeping.
struct StepCursor {
    Rat3 n;           // N position of the residue about to be placed
    Rat3 ca;          // CA position
    Rat3 dir_in;      // direction N -> CA
    Parity ca_parity; // sublattice parity at CA
    Frame frame;      // cis-tracking frame
};

// Canonical start: CA(1) at the origin on sublattice A under the identity
// frame, N(1) one bond away at e2. Mirrors the reference placement used
// to anchor the worked construction.
inline StepCursor canonical_start() {
    const Rat3& e2 = bond_basis()[1];
    return StepCursor{e2, Rat3{0, 0, 0}, -e2, Parity::A, Frame::identity()};
}

// The three outgoing directions at a site, excluding the reverse of the
// incoming bond, in basis-index order.
inline std::array<Rat3, 3> free_directions(const Rat3& incoming, Parity parity,
                                           const Frame& frame) {
    std::array<Rat3, 4> all = bond_directions(parity, frame);
    std::array<Rat3, 3> out;
    std::size_t k = 0;
    for (const Rat3& d : all) {
        if (d == -incoming) continue;
        if (k == 3) throw exactness_error("incoming bond not on the lattice");
        out[k++] = d;
    }
    if (k != 3) throw exactness_error("incoming bond not on the lattice");
    return out;
}

// Reorder three candidate directions so that index 0 realizes torsion 180,
// index 1 realizes -60 and index 2 realizes +60 for the dihedral whose two
// fixed bonds are (b1, b2). Every lattice context yields exactly one
// candidate per state.
inline std::array<Rat3, 3> order_by_torsion(const Rat3& b1, const Rat3& b2,
                                            const std::array<Rat3, 3>& candidates) {
    std::array<Rat3, 3> out;
    std::array<bool, 3> seen = {false, false, false};
    for (const Rat3& c : candidates) {
        auto s = static_cast<std::size_t>(classify_torsion(b1, b2, c));
        if (seen[s]) throw undefined_dihedral_error("duplicate torsion state among candidates");
        seen[s] = true;
        out[s] = c;
    }
    return out;
}

}  // namespace detail

// Direction of the N->CA bond that follows a peptide bond, given the
// preceding CA->C direction and the peptide (C->N) direction. Trans keeps
// the two bonds parallel; cis rotates the trans continuation 180 degrees
// about the peptide bond and reorients the lattice frame, which is the
// hexagonal-diamond departure. The frame is updated in place for cis.
inline Rat3 peptide_continuation(Omega omega, const Rat3& dir_ca_c, const Rat3& dir_c_n,
                                 Frame& frame) {
    if (omega == Omega::trans) return dir_ca_c;
    Frame flip = rot_180_about(dir_c_n);
    frame = flip * frame;
    return flip.apply(dir_ca_c);
}

// The three candidate CA->C directions for the residue at the cursor,
// ordered by choice label. The first residue of a chain has no preceding
// peptide bond to measure a torsion against, so its candidates keep the
// raw basis-index order and its phi label is a pure gauge choice.
inline std::array<Rat3, 3> phi_candidates(const detail::StepCursor& cur,
                                          const std::optional<Rat3>& prev_c_to_n) {
    auto cands = detail::free_directions(cur.dir_in, cur.ca_parity, cur.frame);
    if (!prev_c_to_n) return cands;
    return detail::order_by_torsion(*prev_c_to_n, cur.dir_in, cands);
}

// Deterministic realization of a code into exact coordinates.
inline RealizedChain realize(const ConformationCode& code, const RealizeOptions& opts = {}) {
    const std::size_t n = code.residues.size();
    if (n == 0) throw domain_error("conformation code must have at least one residue");

    RealizedChain chain;
    chain.code = code;
    chain.residues.reserve(n);

    detail::StepCursor cur = detail::canonical_start();
    std::optional<Rat3> prev_c_to_n;  // peptide direction entering this residue

    for (std::size_t i = 0; i < n; ++i) {
        const ResidueCode& rc = code.residues[i];
        if (rc.phi_choice < 1 || rc.phi_choice > 3 || rc.psi_choice < 1 || rc.psi_choice > 3)
            throw domain_error("phi/psi choices must be 1..3");

        auto phis = phi_candidates(cur, prev_c_to_n);
        Rat3 dir_out = phis[static_cast<std::size_t>(rc.phi_choice - 1)];
        Rat3 c_pos = cur.ca + dir_out;
        Parity c_parity = flipped(cur.ca_parity);

        auto psi_raw = detail::free_directions(dir_out, c_parity, cur.frame);
        auto psis = detail::order_by_torsion(cur.dir_in, dir_out, psi_raw);
        Rat3 dir_c_n = psis[static_cast<std::size_t>(rc.psi_choice - 1)];
        Rat3 next_n = c_pos + dir_c_n;

        RealizedResidue res;
        res.n = cur.n;
        res.ca = cur.ca;
        res.c = c_pos;
        if (opts.with_oxygen) {
            // The two bonds C never uses point along the local two-fold
            // axis when summed; the carbonyl O sits on that axis.
            Rat3 sum{0, 0, 0};
            for (const Rat3& d : bond_directions(c_parity, cur.frame)) {
                if (d == -dir_out || d == dir_c_n) continue;
                sum = sum + d;
            }
            res.o = c_pos + opts.carbonyl_scale * sum;
        }
        if (opts.with_r_site) {
            // Of the two free CA directions, chirality selects which one
            // carries the R-group (the other is the implied H). Calibrated
            // against the CORN rule: L-residues have negative signed volume
            // det[N->CA, CA->C, CA->R].
            for (const Rat3& d : bond_directions(cur.ca_parity, cur.frame)) {
                if (d == -cur.dir_in || d == dir_out) continue;
                int s = det3(cur.dir_in, dir_out, d).sign();
                if ((code.chirality == Chirality::L) == (s < 0)) {
                    res.r_site = cur.ca + d;
                    break;
                }
            }
        }
        chain.residues.push_back(std::move(res));

        if (i + 1 < n) {
            Frame frame = cur.frame;
            Rat3 dir_next = peptide_continuation(rc.omega, dir_out, dir_c_n, frame);
            Parity n_parity = flipped(c_parity);
            cur = detail::StepCursor{next_n, next_n + dir_next, dir_next,
                                     flipped(n_parity), frame};
            prev_c_to_n = dir_c_n;
        } else {
            chain.next_n = next_n;
            chain.final_frame = cur.frame;
            chain.final_parity = flipped(c_parity);
        }
    }
    return chain;
}

// Label for one of the 9 ways to extend a chain by a residue.
struct Placement {
    int phi_choice;
    int psi_choice;

    friend bool operator==(const Placement&, const Placement&) = default;
};

// All 9 one-residue extensions of a prefix (3 phi x 3 psi), trans peptide,
// in phi-major order. The appended residue reuses the prefix's last
// amino-acid label.
inline std::vector<std::pair<Placement, RealizedChain>> successors(
    const RealizedChain& prefix, const RealizeOptions& opts = {}) {
    if (prefix.residues.empty()) throw domain_error("successors of an empty chain");
    std::vector<std::pair<Placement, RealizedChain>> out;
    out.reserve(9);
    for (int phi = 1; phi <= 3; ++phi)
        for (int psi = 1; psi <= 3; ++psi) {
            ConformationCode code = prefix.code;
            ResidueCode rc;
            rc.amino_acid = code.residues.back().amino_acid;
            rc.phi_choice = phi;
            rc.psi_choice = psi;
            code.residues.push_back(rc);
            out.emplace_back(Placement{phi, psi}, realize(code, opts));
        }
    return out;
}

// --- Chain edits: the elementary translation operations --------------------

inline void check_index(const ConformationCode& code, std::size_t i) {
    if (i >= code.residues.size()) throw range_error("residue index out of range");
}

inline ConformationCode set_rotation(ConformationCode code, std::size_t i, int phi, int psi) {
    check_index(code, i);
    if (phi < 1 || phi > 3 || psi < 1 || psi > 3)
        throw domain_error("phi/psi choices must be 1..3");
    code.residues[i].phi_choice = phi;
    code.residues[i].psi_choice = psi;
    return code;
}

inline ConformationCode flip_omega(ConformationCode code, std::size_t i) {
    check_index(code, i);
    Omega& w = code.residues[i].omega;
    w = (w == Omega::trans) ? Omega::cis : Omega::trans;
    return code;
}

inline ConformationCode insert_residue(ConformationCode code, std::size_t i, ResidueCode rc) {
    if (i > code.residues.size()) throw range_error("insert index out of range");
    code.residues.insert(code.residues.begin() + static_cast<std::ptrdiff_t>(i), std::move(rc));
    return code;
}

inline ConformationCode delete_residue(ConformationCode code, std::size_t i) {
    check_index(code, i);
    if (code.residues.size() < 2) throw range_error("cannot delete the only residue");
    code.residues.erase(code.residues.begin() + static_cast<std::ptrdiff_t>(i));
    return code;
}

// Exchange of two adjacent building blocks: swaps the amino-acid labels
// and keeps the rotational choices attached to the positions.
inline ConformationCode swap_adjacent(ConformationCode code, std::size_t i) {
    check_index(code, i);
    if (i + 1 >= code.residues.size()) throw range_error("swap index out of range");
    std::swap(code.residues[i].amino_acid, code.residues[i + 1].amino_acid);
    return code;
}

// --- Self-avoidance ---------------------------------------------------------

struct AtomSelection {
    bool backbone = true;  // N, CA, C
    bool r_sites = true;   // included when realized
    bool oxygens = false;  // decoration, excluded by default

    static AtomSelection backbone_only() { return {true, false, false}; }
};

inline std::vector<Rat3> selected_atoms(const RealizedChain& chain,
                                        const AtomSelection& sel = {}) {
    std::vector<Rat3> pts;
    for (const RealizedResidue& r : chain.residues) {
        if (sel.backbone) {
            pts.push_back(r.n);
            pts.push_back(r.ca);
            pts.push_back(r.c);
        }
        if (sel.r_sites && r.r_site) pts.push_back(*r.r_site);
        if (sel.oxygens && r.o) pts.push_back(*r.o);
    }
    return pts;
}

// True iff the selected atoms are pairwise distinct under exact equality.
inline bool self_avoiding(const RealizedChain& chain, const AtomSelection& sel = {}) {
    std::unordered_set<Rat3> seen;
    for (const Rat3& p : selected_atoms(chain, sel)) {
        if (!seen.insert(p).second) return false;
    }
    return true;
}

// --- Chirality ---------------------------------------------------------------

inline bool is_glycine(const std::string& aa) {
    return aa == "Gly" || aa == "GLY" || aa == "gly" || aa == "G";
}

// Handedness of residue i from the signed volume of its bond directions.
// Negative det[N->CA, CA->C, CA->R] is L; the sign was calibrated once
// against the CORN mnemonic on an ideal (S)-alanine.
inline ResidueChirality chirality_of(const RealizedChain& chain, std::size_t i) {
    if (i >= chain.residues.size()) throw range_error("residue index out of range");
    const RealizedResidue& r = chain.residues[i];
    if (is_glycine(chain.code.residues[i].amino_acid)) return ResidueChirality::achiral;
    if (!r.r_site)
        throw incomplete_chain_error("chirality needs an R-site; realize with_r_site");
    Rat3 d_in = r.ca - r.n;
    Rat3 d_out = r.c - r.ca;
    Rat3 d_r = *r.r_site - r.ca;
    int s = det3(d_in, d_out, d_r).sign();
    if (s == 0) throw undefined_dihedral_error("degenerate residue geometry");
    return s < 0 ? ResidueChirality::L : ResidueChirality::D;
}

}  // namespace latfold
