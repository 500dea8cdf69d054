#include "fft_backend.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace convboot::detail {
namespace {

// The FFTW planner is not reentrant; executing an existing plan on new arrays
// is. Plans are created once per (length, direction) and kept for the process
// lifetime. FFTW_ESTIMATE keeps plan choice, and therefore results,
// reproducible from run to run.
class PlanCache {
  public:
    fftw_plan get(int n, int sign) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) {
            return it->second;
        }
        std::vector<std::complex<double>> scratch(static_cast<std::size_t>(n));
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

    ~PlanCache() {
        for (auto& [key, plan] : plans_) {
            fftw_destroy_plan(plan);
        }
    }

  private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

} // namespace

void fft_inplace(std::span<std::complex<double>> data, FftDirection dir) {
    if (data.empty()) {
        return;
    }
    const int sign = dir == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    fftw_plan plan = plan_cache().get(static_cast<int>(data.size()), sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
}

} // namespace convboot::detail
