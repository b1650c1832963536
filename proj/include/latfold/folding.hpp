#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

#include "latfold/amino_acids.hpp"
#include "latfold/chain.hpp"
#include "latfold/errors.hpp"
#include "latfold/geometry.hpp"
#include "latfold/vec3d.hpp"

namespace latfold {

// How residue labels are translated into energy-table keys.
enum class EnergyKeyKind { identity, synthetase_class, property };

// Contact rule plus a symmetric pairwise energy table. Two residues are
// in contact when their CA sites sit exactly one lattice bond apart and
// are at least min_separation positions apart along the chain.
struct EnergyModel {
    EnergyKeyKind key = EnergyKeyKind::identity;
    int min_separation = 2;
    std::map<std::pair<std::string, std::string>, double> pair_energies;

    void set_pair(std::string a, std::string b, double e) {
        if (b < a) std::swap(a, b);
        pair_energies[{std::move(a), std::move(b)}] = e;
    }

    double pair_energy(std::string a, std::string b) const {
        if (b < a) std::swap(a, b);
        auto it = pair_energies.find({std::move(a), std::move(b)});
        return it == pair_energies.end() ? 0.0 : it->second;
    }

    std::string key_of(const std::string& label) const {
        switch (key) {
            case EnergyKeyKind::identity: return label;
            case EnergyKeyKind::synthetase_class: return to_string(lookup(label).synthetase_class);
            default: return to_string(lookup(label).property);
        }
    }

    // Binary hydrophobic/polar baseline: H-H contacts score -1.
    static EnergyModel hp() {
        EnergyModel m;
        m.set_pair("H", "H", -1.0);
        return m;
    }

    // Synthetase-class table. The values are configuration, not data from
    // any reference; long side chains (class I) attract most.
    static EnergyModel synthetase() {
        EnergyModel m;
        m.key = EnergyKeyKind::synthetase_class;
        m.set_pair("I", "I", -2.0);
        m.set_pair("I", "II", -1.5);
        m.set_pair("II", "II", -1.0);
        return m;
    }

    // Text format: one directive per line. "key identity|class|property",
    // "min_separation N", "pair A B value"; '#' starts a comment.
    static EnergyModel parse(const std::string& text) {
        EnergyModel m;
        std::istringstream in(text);
        std::string line;
        long line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            std::string stripped = line.substr(0, line.find('#'));
            std::istringstream ls(stripped);
            std::string head;
            if (!(ls >> head)) continue;
            if (head == "key") {
                std::string k;
                ls >> k;
                if (k == "identity") m.key = EnergyKeyKind::identity;
                else if (k == "class") m.key = EnergyKeyKind::synthetase_class;
                else if (k == "property") m.key = EnergyKeyKind::property;
                else throw parse_error("unknown key kind '" + k + "'", line_no);
            } else if (head == "min_separation") {
                if (!(ls >> m.min_separation) || m.min_separation < 1)
                    throw parse_error("bad min_separation", line_no);
            } else if (head == "pair") {
                std::string a, b;
                double e = 0;
                if (!(ls >> a >> b >> e)) throw parse_error("bad pair line", line_no);
                m.set_pair(a, b, e);
            } else {
                throw parse_error("unknown directive '" + head + "'", line_no);
            }
        }
        return m;
    }
};

// Non-bonded residue pairs whose CA atoms are exactly one lattice bond
// apart (squared distance 3/16, exact).
inline std::vector<std::pair<int, int>> contact_set(const RealizedChain& chain,
                                                    int min_separation = 2) {
    static const Rational bond2{3, 16};
    std::vector<std::pair<int, int>> out;
    const int n = static_cast<int>(chain.residues.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + min_separation; j < n; ++j) {
            if (norm2(chain.residues[static_cast<std::size_t>(j)].ca -
                      chain.residues[static_cast<std::size_t>(i)].ca) == bond2)
                out.emplace_back(i, j);
        }
    return out;
}

inline double energy(const RealizedChain& chain, const EnergyModel& model) {
    if (!self_avoiding(chain, AtomSelection::backbone_only()))
        throw invalid_conformation_error("energy of a non-self-avoiding chain");
    double total = 0;
    for (auto [i, j] : contact_set(chain, model.min_separation)) {
        total += model.pair_energy(
            model.key_of(chain.code.residues[static_cast<std::size_t>(i)].amino_acid),
            model.key_of(chain.code.residues[static_cast<std::size_t>(j)].amino_acid));
    }
    return total;
}

struct FoldReport {
    double best_energy = 0;
    std::vector<ConformationCode> optimal;  // truncated to max_reported
    std::uint64_t optimal_count = 0;
    std::uint64_t states_examined = 0;  // complete self-avoiding conformations
    std::uint64_t total_states = 0;     // size of the full code space
    std::uint64_t seed = 0;
};

struct FoldOptions {
    bool allow_cis = false;
    std::size_t n_max = 8;
    std::size_t max_reported = 64;
    int threads = 0;  // 0: LATFOLD_THREADS env var, else 1
};

inline int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("LATFOLD_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

namespace detail {

// Incremental depth-first walk over the code space with self-avoidance
// pruning. Each level places one residue's N/CA/C; a collision anywhere
// in a prefix removes the whole subtree. Enumeration order is
// (phi, psi, omega) lexicographic per residue, so output is deterministic.
class FoldEnumerator {
  public:
    // Pinning the first joint (psi/omega of residue 1, phi of residue 2)
    // restricts the walk to one top-level subtree; the parallel driver uses
    // this to split work with a deterministic merge.
    struct Pin {
        int psi;
        Omega omega;
        int phi;
    };

    FoldEnumerator(const std::vector<std::string>& sequence, const EnergyModel& model,
                   const FoldOptions& opts, std::optional<Pin> pin = {})
        : sequence_(sequence), model_(model), opts_(opts), pin_(pin) {
        keys_.reserve(sequence.size());
        for (const std::string& label : sequence) keys_.push_back(model.key_of(label));
    }

    FoldReport run() {
        const std::size_t n = sequence_.size();
        FoldReport report;
        report.best_energy = std::numeric_limits<double>::infinity();
        report.total_states = total_states(n, opts_.allow_cis);

        StepCursor cur = canonical_start();
        occupied_.insert(cur.n);
        occupied_.insert(cur.ca);
        cas_.push_back(cur.ca);
        choices_.clear();
        descend(0, cur, std::nullopt, report);
        if (report.optimal_count == 0) {
            report.best_energy = 0;  // no self-avoiding state (cannot happen from n>=1)
        }
        return report;
    }

    static std::uint64_t total_states(std::size_t n, bool allow_cis) {
        std::uint64_t total = 1;
        for (std::size_t i = 1; i < n; ++i) total *= allow_cis ? 18 : 9;
        return total;
    }

  private:
    struct Choice {
        int phi, psi;
        Omega omega;
    };

    void descend(std::size_t i, StepCursor cur, std::optional<Rat3> prev_c_to_n,
                 FoldReport& report) {
        auto phis = phi_candidates(cur, prev_c_to_n);
        int phi_lo = 1, phi_hi = i == 0 ? 1 : 3;  // first phi is a gauge choice
        if (i == 1 && pin_) phi_lo = phi_hi = pin_->phi;
        for (int phi = phi_lo; phi <= phi_hi; ++phi) {
            Rat3 dir_out = phis[static_cast<std::size_t>(phi - 1)];
            Rat3 c_pos = cur.ca + dir_out;
            if (occupied_.count(c_pos)) continue;
            occupied_.insert(c_pos);
            Parity c_parity = flipped(cur.ca_parity);

            if (i + 1 == sequence_.size()) {
                choices_.push_back({phi, 1, Omega::trans});
                evaluate_leaf(report);
                choices_.pop_back();
            } else {
                auto psi_raw = free_directions(dir_out, c_parity, cur.frame);
                auto psis = order_by_torsion(cur.dir_in, dir_out, psi_raw);
                int psi_lo = 1, psi_hi = 3;
                if (i == 0 && pin_) psi_lo = psi_hi = pin_->psi;
                for (int psi = psi_lo; psi <= psi_hi; ++psi) {
                    Rat3 dir_c_n = psis[static_cast<std::size_t>(psi - 1)];
                    Rat3 next_n = c_pos + dir_c_n;
                    if (occupied_.count(next_n)) continue;
                    for (Omega omega : omega_options(i)) {
                        Frame frame = cur.frame;
                        Rat3 dir_next = peptide_continuation(omega, dir_out, dir_c_n, frame);
                        Rat3 next_ca = next_n + dir_next;
                        if (occupied_.count(next_ca)) continue;
                        occupied_.insert(next_n);
                        occupied_.insert(next_ca);
                        cas_.push_back(next_ca);
                        choices_.push_back({phi, psi, omega});
                        StepCursor next{next_n, next_ca, dir_next, c_parity, frame};
                        descend(i + 1, next, dir_c_n, report);
                        choices_.pop_back();
                        cas_.pop_back();
                        occupied_.erase(next_ca);
                        occupied_.erase(next_n);
                    }
                }
            }
            occupied_.erase(c_pos);
        }
    }

    std::vector<Omega> omega_options(std::size_t i) const {
        if (i == 0 && pin_) return {pin_->omega};
        if (opts_.allow_cis) return {Omega::trans, Omega::cis};
        return {Omega::trans};
    }

    void evaluate_leaf(FoldReport& report) {
        ++report.states_examined;
        static const Rational bond2{3, 16};
        double e = 0;
        const int n = static_cast<int>(cas_.size());
        for (int i = 0; i < n; ++i)
            for (int j = i + model_.min_separation; j < n; ++j) {
                if (norm2(cas_[static_cast<std::size_t>(j)] -
                          cas_[static_cast<std::size_t>(i)]) == bond2)
                    e += model_.pair_energy(keys_[static_cast<std::size_t>(i)],
                                            keys_[static_cast<std::size_t>(j)]);
            }
        if (e < report.best_energy - 1e-12) {
            report.best_energy = e;
            report.optimal.clear();
            report.optimal_count = 0;
        }
        if (e < report.best_energy + 1e-12) {
            ++report.optimal_count;
            if (report.optimal.size() < opts_.max_reported)
                report.optimal.push_back(current_code());
        }
    }

    ConformationCode current_code() const {
        ConformationCode code;
        code.chirality = Chirality::L;
        for (std::size_t i = 0; i < choices_.size(); ++i) {
            ResidueCode rc;
            rc.amino_acid = sequence_[i];
            rc.phi_choice = choices_[i].phi;
            rc.psi_choice = choices_[i].psi;
            rc.omega = choices_[i].omega;
            code.residues.push_back(std::move(rc));
        }
        return code;
    }

    const std::vector<std::string>& sequence_;
    const EnergyModel& model_;
    const FoldOptions& opts_;
    std::optional<Pin> pin_;
    std::vector<std::string> keys_;
    std::unordered_set<Rat3> occupied_;
    std::vector<Rat3> cas_;
    std::vector<Choice> choices_;
};

}  // namespace detail

// Exhaustive global minimization over all trans-only codes (times two
// omega states per bond with allow_cis). Search spaces above 9^(n_max-1)
// are refused with a size estimate.
inline FoldReport exhaustive_fold(const std::vector<std::string>& sequence,
                                  const EnergyModel& model, const FoldOptions& opts = {}) {
    const std::size_t n = sequence.size();
    if (n == 0) throw domain_error("empty sequence");
    if (n > opts.n_max) {
        throw size_limit_error(
            "chain of " + std::to_string(n) + " residues needs " +
            std::to_string(detail::FoldEnumerator::total_states(n, opts.allow_cis)) +
            " states; raise n_max to allow it");
    }

    const int threads = resolve_thread_count(opts.threads);
    if (threads <= 1 || n < 3) {
        detail::FoldEnumerator e(sequence, model, opts);
        return e.run();
    }

    // Parallel over the first branching level: one subtree per (psi, omega,
    // phi) option of the first joint, merged in option order so the output
    // does not depend on the thread count.
    struct Task {
        detail::FoldEnumerator::Pin pin;
        FoldReport report;
    };
    std::vector<Task> tasks;
    for (int psi = 1; psi <= 3; ++psi)
        for (Omega omega :
             opts.allow_cis ? std::vector<Omega>{Omega::trans, Omega::cis}
                            : std::vector<Omega>{Omega::trans})
            for (int phi = 1; phi <= 3; ++phi)
                tasks.push_back({detail::FoldEnumerator::Pin{psi, omega, phi}, {}});

    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t t = cursor.fetch_add(1);
            if (t >= tasks.size()) return;
            Task& task = tasks[t];
            detail::FoldEnumerator e(sequence, model, opts, task.pin);
            task.report = e.run();
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();

    FoldReport merged;
    merged.best_energy = std::numeric_limits<double>::infinity();
    merged.total_states = detail::FoldEnumerator::total_states(n, opts.allow_cis);
    for (const Task& task : tasks) {
        const FoldReport& r = task.report;
        merged.states_examined += r.states_examined;
        if (r.optimal_count == 0) continue;
        if (r.best_energy < merged.best_energy - 1e-12) {
            merged.best_energy = r.best_energy;
            merged.optimal.clear();
            merged.optimal_count = 0;
        }
        if (r.best_energy < merged.best_energy + 1e-12) {
            merged.optimal_count += r.optimal_count;
            for (const ConformationCode& c : r.optimal) {
                if (merged.optimal.size() >= opts.max_reported) break;
                merged.optimal.push_back(c);
            }
        }
    }
    if (!std::isfinite(merged.best_energy)) merged.best_energy = 0;
    return merged;
}

struct AnnealSchedule {
    double t_start = 2.0;
    double t_end = 0.05;
    std::size_t steps = 20000;
};

struct AnnealOptions {
    bool allow_cis = false;
    std::optional<ConformationCode> initial;
    int init_retries = 1000;
    // Called after every step with (step, energy, temperature).
    std::function<void(std::size_t, double, double)> observer;
};

// Metropolis walk over codes using the set_rotation and flip_omega edit
// moves, restricted to self-avoiding states. Reproducible given the seed.
inline FoldReport anneal_fold(const std::vector<std::string>& sequence,
                              const EnergyModel& model, const AnnealSchedule& schedule,
                              std::uint64_t seed, const AnnealOptions& opts = {}) {
    const std::size_t n = sequence.size();
    if (n == 0) throw domain_error("empty sequence");
    if (schedule.steps == 0 || schedule.t_start < 0 || schedule.t_end < 0 ||
        schedule.t_end > schedule.t_start)
        throw domain_error("schedule needs steps >= 1 and t_start >= t_end >= 0");

    std::mt19937_64 rng(seed);
    auto rand_choice = [&]() { return static_cast<int>(rng() % 3) + 1; };

    auto make_code = [&](bool randomize) {
        ConformationCode code;
        code.chirality = Chirality::L;
        for (std::size_t i = 0; i < n; ++i) {
            ResidueCode rc;
            rc.amino_acid = sequence[i];
            if (randomize) {
                rc.phi_choice = rand_choice();
                rc.psi_choice = rand_choice();
                if (opts.allow_cis) rc.omega = rng() % 2 ? Omega::cis : Omega::trans;
            }
            code.residues.push_back(std::move(rc));
        }
        return code;
    };

    ConformationCode current;
    if (opts.initial) {
        current = *opts.initial;
        if (!self_avoiding(realize(current), AtomSelection::backbone_only()))
            throw initialization_error("provided initial state is not self-avoiding");
    } else {
        bool found = false;
        for (int attempt = 0; attempt < opts.init_retries; ++attempt) {
            current = make_code(true);
            if (self_avoiding(realize(current), AtomSelection::backbone_only())) {
                found = true;
                break;
            }
        }
        if (!found)
            throw initialization_error("no self-avoiding start found within retry budget");
    }

    double current_e = energy(realize(current), model);
    ConformationCode best = current;
    double best_e = current_e;

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double ratio =
        schedule.t_start > 0 ? schedule.t_end / schedule.t_start : 0.0;
    for (std::size_t step = 0; step < schedule.steps; ++step) {
        double frac = schedule.steps > 1
                          ? static_cast<double>(step) / static_cast<double>(schedule.steps - 1)
                          : 1.0;
        double temp = schedule.t_start > 0 ? schedule.t_start * std::pow(ratio, frac) : 0.0;

        ConformationCode proposal = current;
        std::size_t i = rng() % n;
        bool flip = opts.allow_cis && n > 1 && (rng() % 5 == 0);
        if (flip) {
            std::size_t bond = rng() % (n - 1);
            proposal = flip_omega(std::move(proposal), bond);
        } else {
            proposal = set_rotation(std::move(proposal), i, rand_choice(), rand_choice());
        }

        RealizedChain chain = realize(proposal);
        if (self_avoiding(chain, AtomSelection::backbone_only())) {
            double e = energy(chain, model);
            double de = e - current_e;
            bool accept = de <= 0 || (temp > 0 && unit(rng) < std::exp(-de / temp));
            if (accept) {
                current = std::move(proposal);
                current_e = e;
                if (e < best_e) {
                    best = current;
                    best_e = e;
                }
            }
        }
        if (opts.observer) opts.observer(step, current_e, temp);
    }

    FoldReport report;
    report.best_energy = best_e;
    report.optimal = {best};
    report.optimal_count = 1;
    report.states_examined = schedule.steps;
    report.total_states =
        detail::FoldEnumerator::total_states(n, opts.allow_cis);
    report.seed = seed;
    return report;
}

enum class LatticeKind { diamond, fcc };

// Sphere packing fraction of the ideal lattices: pi*sqrt(3)/16 for
// diamond (about 0.34), pi/sqrt(18) for face-centred cubic (about 0.74).
inline double packing_fraction_analytic(LatticeKind kind) {
    return kind == LatticeKind::diamond ? M_PI * std::sqrt(3.0) / 16.0
                                        : M_PI / std::sqrt(18.0);
}

struct PackingOptions {
    double class1_radius_bonds = 0.8;
    double class2_radius_bonds = 0.5;
    double backbone_radius_bonds = 0.5;
    std::size_t samples = 20000;
    std::uint64_t seed = 1;
    AtomSelection atoms;  // default: backbone + R-sites
    // Test hook: freeze the bounding dilation instead of using max radius.
    std::optional<double> fixed_dilation_bonds;
};

struct PackingEstimate {
    double fraction = 0;
    double std_error = 0;
    std::string bounding;  // "hull", "box" or "capsule"
    std::size_t samples_in_region = 0;
};

namespace detail {

// Squared distance from p to the convex hull of the centers, by
// Frank-Wolfe projection. Good to ~1e-9 relative, plenty under MC noise.
inline double dist2_to_hull(const Vec3d& p, const std::vector<Vec3d>& centers) {
    Vec3d x = centers[0];
    double best0 = dot(p - x, p - x);
    for (const Vec3d& c : centers) {
        double d = dot(p - c, p - c);
        if (d < best0) {
            best0 = d;
            x = c;
        }
    }
    for (int iter = 0; iter < 128; ++iter) {
        Vec3d g = x - p;
        const Vec3d* s = &centers[0];
        double best = dot(g, *s);
        for (const Vec3d& c : centers) {
            double v = dot(g, c);
            if (v < best) {
                best = v;
                s = &c;
            }
        }
        Vec3d d = *s - x;
        double gap = -dot(g, d);
        if (gap <= 1e-12 * (1.0 + dot(g, g))) break;
        double denom = dot(d, d);
        if (denom <= 0) break;
        double gamma = std::min(1.0, gap / denom);
        x = x + gamma * d;
    }
    return dot(p - x, p - x);
}

}  // namespace detail

// Monte-Carlo packing fraction: volume of the union of atom spheres over
// the volume of the bounding region (convex hull of the centers dilated
// by the largest radius). Degenerate center sets fall back to a capsule
// (collinear) or a dilated bounding box (single point or coplanar), and
// say so in the result.
inline PackingEstimate packing_fraction_chain(const RealizedChain& chain,
                                              const PackingOptions& opts = {}) {
    if (!self_avoiding(chain, opts.atoms))
        throw invalid_conformation_error("packing of a non-self-avoiding chain");
    const double bond_cell = std::sqrt(3.0) / 4.0;  // bond length in cell units

    std::vector<Vec3d> centers;
    std::vector<double> radii;  // cell units
    for (std::size_t i = 0; i < chain.residues.size(); ++i) {
        const RealizedResidue& r = chain.residues[i];
        if (opts.atoms.backbone) {
            for (const Rat3* p : {&r.n, &r.ca, &r.c}) {
                centers.push_back(to_vec3d(*p));
                radii.push_back(opts.backbone_radius_bonds * bond_cell);
            }
        }
        if (opts.atoms.r_sites && r.r_site) {
            const AminoAcidRecord& rec = lookup(chain.code.residues[i].amino_acid);
            double rb = rec.synthetase_class == SynthetaseClass::I ? opts.class1_radius_bonds
                                                                   : opts.class2_radius_bonds;
            centers.push_back(to_vec3d(*r.r_site));
            radii.push_back(rb * bond_cell);
        }
        if (opts.atoms.oxygens && r.o) {
            centers.push_back(to_vec3d(*r.o));
            radii.push_back(opts.backbone_radius_bonds * bond_cell);
        }
    }
    if (centers.empty()) throw domain_error("no atoms selected");
    for (double r : radii)
        if (r <= 0) throw domain_error("radii must be positive");

    double max_r = *std::max_element(radii.begin(), radii.end());
    double dilation = opts.fixed_dilation_bonds ? *opts.fixed_dilation_bonds * bond_cell : max_r;
    if (dilation < max_r) dilation = max_r;  // spheres must stay inside the region

    // Rank of the centered point set decides the bounding shape.
    Vec3d centroid{0, 0, 0};
    for (const Vec3d& c : centers) centroid = centroid + c;
    centroid = (1.0 / static_cast<double>(centers.size())) * centroid;
    std::array<double, 9> cov{};
    for (const Vec3d& c : centers) {
        Vec3d d = c - centroid;
        const double v[3] = {d.x, d.y, d.z};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) cov[static_cast<std::size_t>(3 * a + b)] += v[a] * v[b];
    }
    std::array<double, 3> ev;
    std::array<double, 9> evec;
    detail::jacobi_eigen<3>(cov, ev, evec);
    std::array<int, 3> order = {0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return ev[static_cast<std::size_t>(a)] > ev[static_cast<std::size_t>(b)];
    });
    double scale2 = std::max(ev[static_cast<std::size_t>(order[0])], 0.0);
    int rank = 0;
    for (int k = 0; k < 3; ++k)
        if (ev[static_cast<std::size_t>(k)] > 1e-18 + 1e-12 * scale2) ++rank;

    std::string bounding;
    Vec3d axis_a{}, axis_b{};  // capsule segment endpoints
    if (rank >= 3) {
        bounding = "hull";
    } else if (rank == 1) {
        bounding = "capsule";
        // extreme projections along the principal axis
        int top = order[0];
        Vec3d axis{evec[static_cast<std::size_t>(0 * 3 + top)],
                   evec[static_cast<std::size_t>(1 * 3 + top)],
                   evec[static_cast<std::size_t>(2 * 3 + top)]};
        double lo = 1e300, hi = -1e300;
        for (const Vec3d& c : centers) {
            double t = dot(c - centroid, axis);
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
        axis_a = centroid + lo * axis;
        axis_b = centroid + hi * axis;
    } else {
        bounding = "box";  // single point or coplanar set
    }

    // Axis-aligned sampling box around the dilated region.
    Vec3d lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
    for (const Vec3d& c : centers) {
        lo = {std::min(lo.x, c.x), std::min(lo.y, c.y), std::min(lo.z, c.z)};
        hi = {std::max(hi.x, c.x), std::max(hi.y, c.y), std::max(hi.z, c.z)};
    }
    lo = lo - Vec3d{dilation, dilation, dilation};
    hi = hi + Vec3d{dilation, dilation, dilation};

    auto in_region = [&](const Vec3d& p) {
        if (bounding == "box") return true;  // the sampling box is the region
        if (bounding == "capsule") {
            Vec3d d = axis_b - axis_a;
            double t = dot(p - axis_a, d) / dot(d, d);
            t = std::clamp(t, 0.0, 1.0);
            Vec3d q = axis_a + t * d;
            return dot(p - q, p - q) <= dilation * dilation;
        }
        return detail::dist2_to_hull(p, centers) <= dilation * dilation;
    };
    auto in_union = [&](const Vec3d& p) {
        for (std::size_t i = 0; i < centers.size(); ++i) {
            Vec3d d = p - centers[i];
            if (dot(d, d) <= radii[i] * radii[i]) return true;
        }
        return false;
    };

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> ux(lo.x, hi.x), uy(lo.y, hi.y), uz(lo.z, hi.z);
    std::size_t hits_region = 0, hits_union = 0;
    for (std::size_t s = 0; s < opts.samples; ++s) {
        Vec3d p{ux(rng), uy(rng), uz(rng)};
        if (!in_region(p)) continue;
        ++hits_region;
        if (in_union(p)) ++hits_union;
    }
    if (hits_region == 0) throw domain_error("no samples landed in the bounding region");

    PackingEstimate est;
    est.bounding = bounding;
    est.samples_in_region = hits_region;
    est.fraction = static_cast<double>(hits_union) / static_cast<double>(hits_region);
    est.std_error = std::sqrt(std::max(est.fraction * (1 - est.fraction), 1e-12) /
                              static_cast<double>(hits_region));
    return est;
}

}  // namespace latfold
