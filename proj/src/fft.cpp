#include "sclat/fft.hpp"

#include "sclat/errors.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace sclat::fft {
namespace {

using Key = std::tuple<int, int, std::size_t, std::size_t, std::size_t, int>;

struct PlanCache {
    std::mutex mutex;
    std::map<Key, fftw_plan> plans;
    ~PlanCache() {
        for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

fftw_plan plan_for(cplx* data, int n, int M, std::size_t howmany, std::size_t stride, std::size_t dist,
                   Direction dir) {
    const int sign = dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    const Key key{n, M, howmany, stride, dist, sign};
    auto& c = cache();
    std::lock_guard<std::mutex> lock(c.mutex);
    if (auto it = c.plans.find(key); it != c.plans.end()) return it->second;
    std::vector<int> dims(static_cast<std::size_t>(n), M);
    auto* p = reinterpret_cast<fftw_complex*>(data);
    // FFTW_ESTIMATE never touches the arrays during planning.
    fftw_plan plan = fftw_plan_many_dft(n, dims.data(), static_cast<int>(howmany), p, nullptr,
                                        static_cast<int>(stride), static_cast<int>(dist), p, nullptr,
                                        static_cast<int>(stride), static_cast<int>(dist), sign,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw Error("fft: FFTW could not create a plan");
    c.plans.emplace(key, plan);
    return plan;
}

} // namespace

void transform(cplx* data, int n, int M, std::size_t howmany, std::size_t stride, std::size_t dist,
               Direction dir) {
    if (howmany == 0) return;
    fftw_plan plan = plan_for(data, n, M, howmany, stride, dist, dir);
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan, p, p);
}

void rows(std::vector<cplx>& table, const LatticeModel& model, Direction dir) {
    const std::size_t N = model.size();
    transform(table.data(), model.dim(), model.points_per_axis(), table.size() / N, 1, N, dir);
}

void columns(std::vector<cplx>& table, const LatticeModel& model, std::size_t cols, Direction dir) {
    transform(table.data(), model.dim(), model.points_per_axis(), cols, cols, 1, dir);
}

} // namespace sclat::fft
