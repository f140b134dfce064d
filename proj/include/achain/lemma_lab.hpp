#pragma once

// Shadow expansion of antichain codes across layers.
//
// For n >= 8r, n/2 + 3r <= k <= 3n/4, S inside layer k and a distance-(2r+1)
// code A inside layer k - r avoiding the r-shadow of S:
//
//     |∂^{3r} S ∪ ∂^{2r} A|  >=  |S| + n^r |A| / (4 (2r)^{3r})
//
// This header checks instances of that inequality exactly, generates and
// stresses instances, and evaluates the layer-by-layer chain it induces for
// a whole antichain code.

#include "achain/errors.hpp"
#include "achain/family_io.hpp"
#include "achain/hypercube.hpp"
#include "achain/random.hpp"
#include "achain/rational.hpp"

#include <json.hpp>

#include <bit>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace achain {

struct LemmaInstance {
    int n = 0;
    int k = 0;
    int r = 0;
    SetFamily S;
    SetFamily A;
};

/// Names of the instance hypotheses, in checking order.
namespace hypothesis {
inline constexpr const char* ground_size = "n>=8r";
inline constexpr const char* k_window = "n/2+3r<=k<=3n/4";
inline constexpr const char* s_layer = "S in layer k";
inline constexpr const char* a_layer = "A in layer k-r";
inline constexpr const char* a_avoids_shadow = "A disjoint from shadow(S,r)";
inline constexpr const char* a_distance = "A distance >= 2r+1";
}  // namespace hypothesis

class HypothesisError : public std::invalid_argument {
public:
    HypothesisError(std::string which, const std::string& detail)
        : std::invalid_argument(which + " violated: " + detail), which_(std::move(which)) {}
    const std::string& which() const noexcept { return which_; }

private:
    std::string which_;
};

struct HypothesisViolation {
    std::string which;
    std::string detail;
};

inline std::optional<HypothesisViolation> check_parameters(int n, int k, int r) {
    if (r < 1 || n < 1 || n > kMaxGroundSet)
        return HypothesisViolation{hypothesis::ground_size, "need n, r >= 1 and n <= 63"};
    if (n < 8 * r)
        return HypothesisViolation{hypothesis::ground_size,
                                   "n=" + std::to_string(n) + " < 8r=" + std::to_string(8 * r)};
    if (2 * k < n + 6 * r || 4 * k > 3 * n)
        return HypothesisViolation{hypothesis::k_window, "k=" + std::to_string(k) + " outside [n/2+3r, 3n/4]"};
    return std::nullopt;
}

/// Every failed hypothesis of the instance, in checking order.
inline std::vector<HypothesisViolation> hypothesis_violations(const LemmaInstance& inst) {
    std::vector<HypothesisViolation> out;
    const int n = inst.n, k = inst.k, r = inst.r;
    if (r < 1 || n < 1 || n > kMaxGroundSet) {
        out.push_back({hypothesis::ground_size, "need n, r >= 1 and n <= 63"});
        return out;
    }
    if (n < 8 * r) out.push_back({hypothesis::ground_size, "n=" + std::to_string(n) + " < 8r"});
    if (2 * k < n + 6 * r || 4 * k > 3 * n)
        out.push_back({hypothesis::k_window, "k=" + std::to_string(k) + " outside [n/2+3r, 3n/4]"});
    if (inst.S.ground() != n || inst.A.ground() != n) {
        out.push_back({inst.S.ground() != n ? hypothesis::s_layer : hypothesis::a_layer, "ground-set size mismatch"});
        return out;
    }
    for (auto m : inst.S.masks())
        if (std::popcount(m) != k) {
            out.push_back({hypothesis::s_layer, "member mask " + std::to_string(m) + " has size " +
                                                    std::to_string(std::popcount(m))});
            break;
        }
    for (auto m : inst.A.masks())
        if (std::popcount(m) != k - r) {
            out.push_back({hypothesis::a_layer, "member mask " + std::to_string(m) + " has size " +
                                                    std::to_string(std::popcount(m))});
            break;
        }
    SetFamily overlap = family_intersection(inst.A, shadow(inst.S, r));
    if (!overlap.empty())
        out.push_back({hypothesis::a_avoids_shadow,
                       "mask " + std::to_string(overlap.masks()[0]) + " lies in A and in the r-shadow of S"});
    auto dist = min_distance(inst.A);
    if (dist.min_distance < 2 * r + 1) {
        const auto& [x, y] = *dist.witness;
        out.push_back({hypothesis::a_distance, "masks " + std::to_string(x.bits()) + " and " +
                                                   std::to_string(y.bits()) + " at distance " +
                                                   std::to_string(dist.min_distance)});
    }
    return out;
}

inline void validate_instance(const LemmaInstance& inst) {
    auto violations = hypothesis_violations(inst);
    if (!violations.empty()) throw HypothesisError(violations.front().which, violations.front().detail);
}

/// n^r / (4 (2r)^{3r})
inline Rational expansion_coefficient(int n, int r) {
    BigInt num = boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(r));
    BigInt den = 4 * boost::multiprecision::pow(BigInt(2 * r), static_cast<unsigned>(3 * r));
    return Rational(num, den);
}

struct LemmaReport {
    std::uint64_t lhs = 0;  ///< |∂^{3r}S ∪ ∂^{2r}A|
    Rational rhs;           ///< |S| + n^r|A| / (4(2r)^{3r})
    Rational slack;         ///< lhs - rhs
    bool holds = false;
};

namespace detail {

inline LemmaReport evaluate_lemma(const LemmaInstance& inst) {
    SetFamily lower = family_union(shadow(inst.S, 3 * inst.r), shadow(inst.A, 2 * inst.r));
    LemmaReport rep;
    rep.lhs = lower.size();
    rep.rhs = Rational(BigInt(inst.S.size())) + expansion_coefficient(inst.n, inst.r) * BigInt(inst.A.size());
    rep.slack = Rational(BigInt(rep.lhs)) - rep.rhs;
    rep.holds = rep.slack >= 0;
    return rep;
}

/// Maximal distance-(2r+1) code among `candidates`, taken greedily in a
/// seeded random order.
inline SetFamily greedy_code_in(const SetFamily& candidates, int min_dist, Rng& rng) {
    std::vector<std::uint64_t> order(candidates.masks().begin(), candidates.masks().end());
    shuffle(std::span<std::uint64_t>(order), rng);
    std::vector<std::uint64_t> kept;
    for (auto c : order) {
        bool ok = true;
        for (auto k : kept)
            if (std::popcount(c ^ k) < min_dist) {
                ok = false;
                break;
            }
        if (ok) kept.push_back(c);
    }
    return SetFamily::from_masks(candidates.ground(), std::move(kept));
}

inline SetFamily derive_code(int n, int k, int r, const SetFamily& S, Rng& rng) {
    SetFamily free = family_difference(layer(n, k - r), shadow(S, r));
    return greedy_code_in(free, 2 * r + 1, rng);
}

}  // namespace detail

/// Exact evaluation of both sides; throws HypothesisError naming the first
/// failed hypothesis.
inline LemmaReport lemma1_check(const LemmaInstance& inst) {
    validate_instance(inst);
    return detail::evaluate_lemma(inst);
}

/// S: floor(density * C(n,k)) members of layer k chosen by a seeded shuffle.
/// A: a maximal distance-(2r+1) code in layer k-r outside the r-shadow of S,
/// built greedily in a seeded random order.
inline LemmaInstance random_instance(int n, int k, int r, const Rational& density, std::uint64_t seed) {
    if (auto v = check_parameters(n, k, r)) throw HypothesisError(v->which, v->detail);
    if (density < 0 || density > 1) throw std::invalid_argument("density must lie in [0, 1]");
    Rng rng = substream(seed, 0);
    SetFamily full = layer(n, k);
    std::vector<std::uint64_t> pool(full.masks().begin(), full.masks().end());
    shuffle(std::span<std::uint64_t>(pool), rng);
    Rational want = density * BigInt(pool.size());
    BigInt take = boost::multiprecision::numerator(want) / boost::multiprecision::denominator(want);
    pool.resize(take.convert_to<std::size_t>());

    LemmaInstance inst{n, k, r, SetFamily::from_masks(n, std::move(pool)), SetFamily(n)};
    inst.A = detail::derive_code(n, k, r, inst.S, rng);
    validate_instance(inst);
    return inst;
}

inline nlohmann::json instance_to_json(const LemmaInstance& inst) {
    return {{"n", inst.n}, {"k", inst.k}, {"r", inst.r}, {"S", format_family(inst.S)}, {"A", format_family(inst.A)}};
}

inline LemmaInstance instance_from_json(const nlohmann::json& j) {
    LemmaInstance inst;
    inst.n = j.at("n").get<int>();
    inst.k = j.at("k").get<int>();
    inst.r = j.at("r").get<int>();
    inst.S = parse_family(j.at("S").get<std::string>());
    inst.A = parse_family(j.at("A").get<std::string>());
    if (inst.S.ground() != inst.n || inst.A.ground() != inst.n)
        throw std::invalid_argument("instance families disagree with n");
    return inst;
}

/// Raised when an instance satisfying every hypothesis has negative slack.
class LemmaCounterexample : public std::runtime_error {
public:
    LemmaCounterexample(const LemmaInstance& inst, const LemmaReport& rep)
        : std::runtime_error("negative slack " + to_string(rep.slack) + " on a valid instance"),
          instance_(inst),
          report_(rep) {}
    const LemmaInstance& instance() const noexcept { return instance_; }
    const LemmaReport& report() const noexcept { return report_; }
    std::string serialized() const { return instance_to_json(instance_).dump(2); }

private:
    LemmaInstance instance_;
    LemmaReport report_;
};

struct AdversarialResult {
    LemmaInstance instance;
    LemmaReport report;
    std::uint64_t moves = 0;
    std::uint64_t accepted = 0;
};

/// Local search for small slack. Starts from random_instance(n, k, r, 1/2,
/// seed); each move toggles one random member of layer k in S and re-derives
/// A greedily, and is kept when the slack does not increase. Throws
/// LemmaCounterexample on negative slack.
inline AdversarialResult adversarial_min_slack(int n, int k, int r, std::uint64_t budget, std::uint64_t seed) {
    LemmaInstance current = random_instance(n, k, r, Rational(1, 2), seed);
    LemmaReport current_report = lemma1_check(current);
    AdversarialResult best{current, current_report, budget, 0};
    if (!current_report.holds) throw LemmaCounterexample(current, current_report);

    const SetFamily full = layer(n, k);
    for (std::uint64_t move = 1; move <= budget; ++move) {
        Rng rng = substream(seed, move);
        const std::uint64_t pick = full.masks()[uniform_below(rng, full.size())];
        std::vector<std::uint64_t> members(current.S.masks().begin(), current.S.masks().end());
        auto it = std::lower_bound(members.begin(), members.end(), pick);
        if (it != members.end() && *it == pick) members.erase(it);
        else members.insert(it, pick);

        LemmaInstance candidate{n, k, r, SetFamily::from_sorted_masks(n, std::move(members)), SetFamily(n)};
        candidate.A = detail::derive_code(n, k, r, candidate.S, rng);
        LemmaReport rep = lemma1_check(candidate);
        if (!rep.holds) throw LemmaCounterexample(candidate, rep);
        if (rep.slack <= current_report.slack) {
            current = std::move(candidate);
            current_report = rep;
            ++best.accepted;
            if (current_report.slack < best.report.slack) {
                best.instance = current;
                best.report = current_report;
            }
        }
    }
    return best;
}

struct ChainRow {
    int k = 0;
    std::size_t s_k = 0;
    std::size_t s_k_plus_3r = 0;
    std::size_t a_k_plus_2r = 0;
    Rational rhs;  ///< |S_{k+3r}| + n^r |A_{k+2r}| / (4(2r)^{3r})
    bool holds = false;
};

struct ChainAggregate {
    int k = 0;
    std::size_t s_k = 0;
    std::vector<int> levels;  ///< the layers ℓ summed over
    Rational bound;           ///< n^r / (4(2r)^{3r}) · Σ |A_ℓ|
    bool holds = false;
};

struct ChainReport {
    int n = 0;
    int r = 0;
    /// |S_k| for k = 0..n, S_k the k-sets contained in some member of A
    std::vector<std::size_t> s_sizes;
    std::vector<ChainRow> rows;
    std::vector<ChainAggregate> aggregates;
    bool window_empty = false;
    bool holds = true;
    std::string note;
};

/// Evaluates |S_k| >= |S_{k+3r}| + n^r |A_{k+2r}| / (4(2r)^{3r}) for every
/// n/2 <= k <= 3n/4 - 3r, and the bound on |S_k| obtained by chaining those
/// rows, for every k >= n/2. A must be an antichain distance-(2r+1) code.
inline ChainReport inductive_chain_check(const SetFamily& A, int r) {
    if (r < 1) throw std::invalid_argument("chain check needs r >= 1");
    auto chain = is_antichain(A);
    if (!chain.antichain) {
        const auto& [x, y] = *chain.witness;
        throw PreconditionError("antichain", "mask " + std::to_string(x.bits()) + " is contained in mask " +
                                                     std::to_string(y.bits()));
    }
    auto dist = min_distance(A);
    if (dist.min_distance < 2 * r + 1) {
        const auto& [x, y] = *dist.witness;
        throw PreconditionError("distance", "masks " + std::to_string(x.bits()) + " and " +
                                                    std::to_string(y.bits()) + " at distance " +
                                                    std::to_string(dist.min_distance));
    }

    const int n = A.ground();
    ChainReport rep;
    rep.n = n;
    rep.r = r;
    std::vector<std::size_t> a_sizes(static_cast<std::size_t>(n) + 1, 0);
    for (auto m : A.masks()) ++a_sizes[static_cast<std::size_t>(std::popcount(m))];

    // S_k = ∂S_{k+1} ∪ A_k, top down
    rep.s_sizes.assign(static_cast<std::size_t>(n) + 1, 0);
    SetFamily s = restrict_to_layer(A, n);
    rep.s_sizes[static_cast<std::size_t>(n)] = s.size();
    for (int k = n - 1; k >= 0; --k) {
        s = family_union(shadow(s, 1), restrict_to_layer(A, k));
        rep.s_sizes[static_cast<std::size_t>(k)] = s.size();
    }

    const Rational coef = expansion_coefficient(n, r);
    auto in_window = [&](int k) { return 2 * k >= n && 4 * k <= 3 * n - 12 * r; };
    for (int k = 0; k <= n; ++k) {
        if (!in_window(k)) continue;
        ChainRow row;
        row.k = k;
        row.s_k = rep.s_sizes[static_cast<std::size_t>(k)];
        row.s_k_plus_3r = rep.s_sizes[static_cast<std::size_t>(k + 3 * r)];
        row.a_k_plus_2r = a_sizes[static_cast<std::size_t>(k + 2 * r)];
        row.rhs = Rational(BigInt(row.s_k_plus_3r)) + coef * BigInt(row.a_k_plus_2r);
        row.holds = Rational(BigInt(row.s_k)) >= row.rhs;
        rep.holds = rep.holds && row.holds;
        rep.rows.push_back(std::move(row));
    }
    for (int k = (n + 1) / 2; k <= n; ++k) {
        ChainAggregate agg;
        agg.k = k;
        agg.s_k = rep.s_sizes[static_cast<std::size_t>(k)];
        std::size_t total = 0;
        for (int l = k; 4 * l <= 3 * n - 12 * r; ++l)
            if (((l - k - 2 * r) % (3 * r) + 3 * r) % (3 * r) == 0) {
                agg.levels.push_back(l);
                total += a_sizes[static_cast<std::size_t>(l)];
            }
        agg.bound = coef * BigInt(total);
        agg.holds = Rational(BigInt(agg.s_k)) >= agg.bound;
        rep.holds = rep.holds && agg.holds;
        rep.aggregates.push_back(std::move(agg));
    }
    rep.window_empty = rep.rows.empty();
    if (rep.window_empty)
        rep.note = "no k with n/2 <= k <= 3n/4 - 3r for n=" + std::to_string(n) + ", r=" + std::to_string(r) +
                   "; no chain rows apply";
    return rep;
}

}  // namespace achain
