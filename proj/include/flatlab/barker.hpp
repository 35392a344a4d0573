#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "flatlab/norms.hpp"
#include "flatlab/polynomial.hpp"

namespace flatlab::barker {

/// Aperiodic autocorrelations c_k = sum_{j=0}^{n-k-1} b_j b_{j+k}, k = 1..n-1.
struct AutocorrelationProfile {
    std::size_t n = 0;
    std::vector<long long> sidelobes;  // c_1..c_{n-1}
    long long sidelobe_energy = 0;     // sum_{k>=1} c_k^2
    double merit_factor = 0.0;         // n^2 / (2 energy); +inf for n == 1
    bool is_barker = false;
};

AutocorrelationProfile autocorrelate_signs(const SignSequence& b);
bool is_barker(const SignSequence& b);

struct SearchOptions {
    bool symmetry_reduce = false;
    std::size_t cap = 30;
    std::size_t prefix_depth = 4;  // work units for the thread pool
    unsigned threads = 1;
};

struct SearchResult {
    std::size_t n = 0;
    std::vector<SignSequence> sequences;  // lexicographic order, -1 < +1
    std::uint64_t nodes_visited = 0;
    double wall_time_s = 0.0;
    bool symmetry_reduced = false;
};

/// Exhaustive depth-first search over {+-1}^n. Positions are filled from both
/// ends inward; a node is cut as soon as some lag's known partial sum is at
/// least 2 away from {-1,0,1} even if every unknown term cancels it. Throws
/// CapabilityError above options.cap.
SearchResult search_barker(std::size_t n, const SearchOptions& options = {});

/// Negation, reversal and alternation b_j -> (-1)^j b_j.
std::vector<SignSequence> symmetry_orbit(const SignSequence& b);

struct ExistenceEntry {
    std::size_t n = 0;
    std::size_t count = 0;
    bool consistent = true;
};

/// Existence for every n <= n_max, checked against the necessary conditions
/// "odd n implies n <= 13" and "even n > 2 implies n = 4 m^2".
struct TurynStorerReport {
    std::size_t n_max = 0;
    std::vector<ExistenceEntry> entries;
    std::uint64_t nodes_visited = 0;
    bool consistent = true;
};

bool turyn_storer_admissible(std::size_t n);
TurynStorerReport turyn_storer_probe(std::size_t n_max, const SearchOptions& options = {});

struct BarkerFlatness {
    FlatnessReport report;
    double square_deviation = 0.0;  // int (|P~|^2 - 1)^2 dz
};

BarkerFlatness barker_flatness(const SignSequence& b, double alpha,
                               const RefineOptions& options = {});

}  // namespace flatlab::barker
