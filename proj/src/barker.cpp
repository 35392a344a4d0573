#include "flatlab/barker.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "flatlab/errors.hpp"
#include "flatlab/parallel.hpp"
#include "flatlab/summation.hpp"

namespace flatlab::barker {

AutocorrelationProfile autocorrelate_signs(const SignSequence& b) {
    const std::size_t n = b.size();
    AutocorrelationProfile profile;
    profile.n = n;
    profile.sidelobes.resize(n - 1);
    profile.is_barker = true;
    for (std::size_t k = 1; k < n; ++k) {
        long long c = 0;
        for (std::size_t j = 0; j + k < n; ++j) c += b[j] * b[j + k];
        profile.sidelobes[k - 1] = c;
        profile.sidelobe_energy += c * c;
        profile.is_barker = profile.is_barker && std::llabs(c) <= 1;
    }
    const double nn = static_cast<double>(n);
    profile.merit_factor = profile.sidelobe_energy == 0
                               ? std::numeric_limits<double>::infinity()
                               : nn * nn / (2.0 * static_cast<double>(profile.sidelobe_energy));
    return profile;
}

bool is_barker(const SignSequence& b) { return autocorrelate_signs(b).is_barker; }

std::vector<SignSequence> symmetry_orbit(const SignSequence& b) {
    const std::size_t n = b.size();
    std::vector<SignSequence> orbit;
    for (int mask = 0; mask < 8; ++mask) {
        std::vector<int> s(b.signs().begin(), b.signs().end());
        if (mask & 1) {
            for (auto& v : s) v = -v;
        }
        if (mask & 2) std::reverse(s.begin(), s.end());
        if (mask & 4) {
            for (std::size_t j = 1; j < n; j += 2) s[j] = -s[j];
        }
        orbit.emplace_back(std::move(s));
    }
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    return orbit;
}

namespace {

// Positions are assigned in the order 0, n-1, 1, n-2, ... so that long lags
// become fully determined early. For every lag k the state keeps the sum of
// products over pairs (j, j+k) with both ends assigned and the number of pairs
// still open.
class SearchState {
public:
    explicit SearchState(std::size_t n)
        : n_(n), order_(n), values_(n, 0), known_(n, 0), open_(n, 0) {
        for (std::size_t i = 0, lo = 0, hi = n; i < n; ++i) {
            order_[i] = (i % 2 == 0) ? lo++ : --hi;
        }
        for (std::size_t k = 1; k < n; ++k) open_[k] = static_cast<long long>(n - k);
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t position(std::size_t step) const noexcept { return order_[step]; }

    void assign(std::size_t q, int v) {
        values_[q] = v;
        for (std::size_t k = 1; k < n_; ++k) {
            if (q >= k && values_[q - k] != 0) {
                known_[k] += v * values_[q - k];
                --open_[k];
            }
            if (q + k < n_ && values_[q + k] != 0) {
                known_[k] += v * values_[q + k];
                --open_[k];
            }
        }
    }

    void unassign(std::size_t q) {
        const int v = values_[q];
        for (std::size_t k = 1; k < n_; ++k) {
            if (q >= k && values_[q - k] != 0) {
                known_[k] -= v * values_[q - k];
                ++open_[k];
            }
            if (q + k < n_ && values_[q + k] != 0) {
                known_[k] -= v * values_[q + k];
                ++open_[k];
            }
        }
        values_[q] = 0;
    }

    // Even if every open pair contributes against the known sum, |c_k| stays >= 2.
    bool feasible() const noexcept {
        for (std::size_t k = 1; k < n_; ++k) {
            if (std::llabs(known_[k]) - open_[k] >= 2) return false;
        }
        return true;
    }

    SignSequence snapshot() const { return SignSequence(values_); }

private:
    std::size_t n_;
    std::vector<std::size_t> order_;
    std::vector<int> values_;  // 0 = unassigned
    std::vector<long long> known_;
    std::vector<long long> open_;
};

struct Task {
    std::vector<int> prefix;  // values for steps 0..prefix.size()-1
};

struct TaskResult {
    std::vector<SignSequence> found;
    std::uint64_t nodes = 0;
};

bool allowed(std::size_t position, int value, bool reduce) {
    // With reduction, negation fixes b_0 = +1 and alternation then fixes b_1 = +1.
    return !(reduce && position <= 1 && value == -1);
}

void dfs(SearchState& state, std::size_t step, bool reduce, TaskResult& out) {
    if (step == state.n()) {
        out.found.push_back(state.snapshot());
        return;
    }
    const std::size_t q = state.position(step);
    for (int v : {-1, 1}) {
        if (!allowed(q, v, reduce)) continue;
        ++out.nodes;
        state.assign(q, v);
        if (state.feasible()) dfs(state, step + 1, reduce, out);
        state.unassign(q);
    }
}

void collect_prefixes(SearchState& state, std::size_t step, std::size_t depth, bool reduce,
                      std::vector<int>& current, std::vector<Task>& tasks, std::uint64_t& nodes) {
    if (step == depth) {
        tasks.push_back({current});
        return;
    }
    const std::size_t q = state.position(step);
    for (int v : {-1, 1}) {
        if (!allowed(q, v, reduce)) continue;
        ++nodes;
        state.assign(q, v);
        current.push_back(v);
        if (state.feasible()) collect_prefixes(state, step + 1, depth, reduce, current, tasks, nodes);
        current.pop_back();
        state.unassign(q);
    }
}

}  // namespace

SearchResult search_barker(std::size_t n, const SearchOptions& options) {
    if (n == 0) throw ParameterError("search_barker: n must be >= 1");
    if (n > options.cap) {
        throw CapabilityError("search_barker: n=" + std::to_string(n) + " exceeds the search cap " +
                              std::to_string(options.cap));
    }
    const auto start = std::chrono::steady_clock::now();
    SearchResult result;
    result.n = n;
    result.symmetry_reduced = options.symmetry_reduce;

    const std::size_t depth = std::min(options.prefix_depth, n);
    std::vector<Task> tasks;
    {
        SearchState state(n);
        std::vector<int> current;
        collect_prefixes(state, 0, depth, options.symmetry_reduce, current, tasks, result.nodes_visited);
    }

    std::vector<TaskResult> partial(tasks.size());
    parallel_for(tasks.size(), options.threads, [&](std::size_t t) {
        SearchState state(n);
        for (std::size_t step = 0; step < tasks[t].prefix.size(); ++step) {
            state.assign(state.position(step), tasks[t].prefix[step]);
        }
        dfs(state, tasks[t].prefix.size(), options.symmetry_reduce, partial[t]);
    });

    for (auto& p : partial) {
        result.nodes_visited += p.nodes;
        for (auto& s : p.found) {
            if (options.symmetry_reduce) {
                for (auto& image : symmetry_orbit(s)) result.sequences.push_back(std::move(image));
            } else {
                result.sequences.push_back(std::move(s));
            }
        }
    }
    std::sort(result.sequences.begin(), result.sequences.end());
    result.sequences.erase(std::unique(result.sequences.begin(), result.sequences.end()),
                           result.sequences.end());
    result.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

bool turyn_storer_admissible(std::size_t n) {
    if (n <= 2) return true;
    if (n % 2 == 1) return n <= 13;
    if (n % 4 != 0) return false;
    const auto m = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n / 4))));
    return m * m == n / 4;
}

TurynStorerReport turyn_storer_probe(std::size_t n_max, const SearchOptions& options) {
    if (n_max == 0) throw ParameterError("turyn_storer_probe: n_max must be >= 1");
    if (n_max > options.cap) {
        throw CapabilityError("turyn_storer_probe: n_max=" + std::to_string(n_max) +
                              " exceeds the search cap " + std::to_string(options.cap));
    }
    TurynStorerReport report;
    report.n_max = n_max;
    for (std::size_t n = 1; n <= n_max; ++n) {
        const SearchResult r = search_barker(n, options);
        ExistenceEntry e;
        e.n = n;
        e.count = r.sequences.size();
        e.consistent = e.count == 0 || turyn_storer_admissible(n);
        report.nodes_visited += r.nodes_visited;
        report.consistent = report.consistent && e.consistent;
        report.entries.push_back(e);
    }
    return report;
}

BarkerFlatness barker_flatness(const SignSequence& b, double alpha, const RefineOptions& options) {
    const CirclePolynomial p = b.to_polynomial(true);
    BarkerFlatness out;
    out.report = flatness_report(p, alpha, kDefaultEpsLadder, options);
    // (|P~|^2 - 1)^2 is a trigonometric polynomial of degree 2(n-1); any grid
    // with M > 2(n-1) integrates it exactly.
    const auto grid = evaluate_on_grid(p, {0, options.oversample, GridPhase::aligned});
    std::vector<double> terms(grid.values.size());
    std::transform(grid.values.begin(), grid.values.end(), terms.begin(), [](Complex v) {
        const double d = std::norm(v) - 1.0;
        return d * d;
    });
    out.square_deviation = pairwise_mean<double>(terms);
    return out;
}

}  // namespace flatlab::barker
