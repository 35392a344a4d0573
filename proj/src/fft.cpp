#include "flatlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

#include "flatlab/errors.hpp"

namespace flatlab {
namespace {

// The FFTW planner is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (length, sign) and never destroyed.
class PlanCache {
public:
    fftw_plan get(std::size_t m, FftSign sign) {
        std::lock_guard lock(mutex_);
        const auto key = std::make_pair(m, static_cast<int>(sign));
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        fftw_complex* scratch = fftw_alloc_complex(m);
        const int dir = sign == FftSign::positive ? FFTW_BACKWARD : FFTW_FORWARD;
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(m), scratch, scratch, dir,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(scratch);
        if (plan == nullptr) throw NumericError("fft: planner failed");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

}  // namespace

void fft_inplace(std::vector<Complex>& data, FftSign sign) {
    const std::size_t m = data.size();
    if (!is_power_of_two(m)) throw ParameterError("fft: length must be a power of two");
    if (m == 1) return;
    auto* buffer = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(cache().get(m, sign), buffer, buffer);
}

}  // namespace flatlab
