// Timing comparison of the OpenMP kernels against their serial
// reference implementations: Jacobi eigensolver, moment accumulation,
// and model application.  Also reports the agreement between the two
// variants so a speedup never hides a numerical regression.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sfa/embedding.hpp"
#include "sfa/jacobi.hpp"
#include "sfa/logistic.hpp"
#include "sfa/matrix.hpp"
#include "sfa/model.hpp"
#include "sfa/moments.hpp"
#include "sfa/preprocessor.hpp"

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

template <typename F>
double time_best_of(int reps, F&& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const double t0 = now_seconds();
        fn();
        best = std::min(best, now_seconds() - t0);
    }
    return best;
}

sfa::SymmetricMatrix random_symmetric(std::size_t n, std::uint64_t seed) {
    sfa::GaussianSampler gauss(seed);
    sfa::Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = gauss.next();
    return sfa::SymmetricMatrix(a);
}

double max_rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double scale = std::max(1.0, std::fabs(a[i]));
        worst = std::max(worst, std::fabs(a[i] - b[i]) / scale);
    }
    return worst;
}

void bench_jacobi(std::size_t n) {
    const sfa::SymmetricMatrix a = random_symmetric(n, 7);
    sfa::EigenDecomposition serial, parallel;
    const double ts = time_best_of(3, [&] { serial = sfa::jacobi_eigen_serial(a); });
    const double tp = time_best_of(3, [&] { parallel = sfa::jacobi_eigen_parallel(a); });
    std::printf("jacobi     n=%-4zu serial %8.4fs  parallel %8.4fs  x%.2f  max eig diff %.2e\n",
                n, ts, tp, ts / tp,
                max_rel_diff(serial.eigenvalues, parallel.eigenvalues));
}

void bench_moments(std::size_t dim, std::size_t samples) {
    sfa::GaussianSampler gauss(11);
    sfa::Matrix data(samples, dim);
    for (std::size_t i = 0; i < samples; ++i)
        for (std::size_t j = 0; j < dim; ++j) data(i, j) = gauss.next();

    sfa::MomentAccumulator serial(dim), parallel(dim);
    const double ts = time_best_of(3, [&] {
        sfa::MomentAccumulator acc(dim);
        acc.update_serial(data);
        serial = acc;
    });
    const double tp = time_best_of(3, [&] {
        sfa::MomentAccumulator acc(dim);
        acc.update(data);
        parallel = acc;
    });
    const auto fs = serial.finalize();
    const auto fp = parallel.finalize();
    double worst = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            const double scale = std::max(1.0, std::fabs(fs.b(i, j)));
            worst = std::max(worst, std::fabs(fs.b(i, j) - fp.b(i, j)) / scale);
        }
    std::printf("moments    d=%-4zu serial %8.4fs  parallel %8.4fs  x%.2f  max B diff %.2e\n",
                dim, ts, tp, ts / tp, worst);
}

void bench_apply(std::size_t m) {
    sfa::LogisticConfig cfg;
    cfg.noise_sigma = 1e-4;
    const std::vector<double> series = sfa::logistic_series(cfg);
    const sfa::Embedded emb = sfa::embed(series, {m, 1});
    const sfa::Preprocessor pre =
        sfa::fit_preprocessor(emb.samples, sfa::PreprocessMode::kSphere, m);
    const sfa::TrainingMoments tm = sfa::accumulate_training(emb.samples, pre);
    const sfa::SfaModel model = sfa::train_svd_sfa(tm, pre);
    const std::size_t k = model.output_count();

    sfa::Matrix ys, yp;
    const double ts =
        time_best_of(3, [&] { ys = sfa::apply_model_serial(model, emb.samples, k); });
    const double tp =
        time_best_of(3, [&] { yp = sfa::apply_model(model, emb.samples, k); });
    double worst = 0.0;
    for (std::size_t i = 0; i < ys.rows(); ++i)
        for (std::size_t j = 0; j < ys.cols(); ++j)
            worst = std::max(worst, std::fabs(ys(i, j) - yp(i, j)));
    std::printf("apply      m=%-4zu serial %8.4fs  parallel %8.4fs  x%.2f  max y diff %.2e\n",
                m, ts, tp, ts / tp, worst);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled (serial build)\n");
#endif
    bench_jacobi(120);
    bench_jacobi(260);
    bench_moments(230, 6000);
    bench_moments(495, 6000);
    bench_apply(12);
    bench_apply(20);
    return 0;
}
