// Benchmark of the OpenMP kernels against their serial reference
// implementations: Gram assembly, theta extremum grid scan, and the OFDM
// interference matrix.

#include <chrono>
#include <functional>
#include <iostream>
#include <string>

#include "gaborlat/gabor.hpp"
#include "gaborlat/ofdm.hpp"
#include "gaborlat/serial_ref.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gl = gaborlat;

namespace {

double seconds(const std::function<void()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void row(const std::string& name, double serial, double parallel) {
    std::cout << name << "," << serial << "," << parallel << ","
              << serial / parallel << "\n";
}

} // namespace

int main() {
#ifdef _OPENMP
    std::cout << "# OpenMP threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "# OpenMP disabled\n";
#endif
    std::cout << "kernel,serial_s,parallel_s,speedup\n";

    const gl::Lattice sq(Eigen::Matrix2d::Identity() / std::sqrt(2.0));

    {
        const double ts = seconds([&] { gl::serial::gram_matrix(sq, 7.0); });
        const double tp = seconds([&] { gl::gram_matrix(sq, 7.0); });
        row("gram_matrix_r7", ts, tp);
    }
    {
        const gl::TruncationPolicy p{};
        const double ts = seconds([&] {
            gl::serial::find_extremum(sq, gl::GaussWidth{1.0}, gl::ExtremumKind::Min,
                                      gl::ThetaForm::DualPhase, 192, p);
        });
        const double tp = seconds([&] {
            gl::find_extremum(sq, gl::GaussWidth{1.0}, gl::ExtremumKind::Min,
                              gl::ThetaForm::DualPhase, 192, p);
        });
        row("find_extremum_g192", ts, tp);
    }
    {
        const gl::OFDMConfig cfg(gl::ofdm_rect_lattice(), 3);
        const gl::ChannelModel ch = gl::default_channel(0.35);
        const double ts = seconds([&] { gl::serial::interference_report(cfg, ch); });
        const double tp = seconds([&] { gl::interference_report(cfg, ch); });
        row("interference_K3", ts, tp);
    }
    return 0;
}
