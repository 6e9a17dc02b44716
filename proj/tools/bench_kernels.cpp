// Times the OpenMP kernels against their serial references and checks the
// results agree bit for bit. Exit 0 when both kernels match.

#include "hyperctx/device.hpp"
#include "hyperctx/polytope.hpp"
#include "hyperctx/scenario.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double time_ms(const std::function<void()>& body) {
    const auto start = std::chrono::steady_clock::now();
    body();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

void print_row(const char* name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-34s %10.1f %10.1f %9.2fx %10s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, identical ? "yes" : "NO");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel kernels fall back to serial\n");
#endif
    std::printf("%-34s %10s %10s %10s %10s\n", "kernel", "serial/ms", "parallel/ms", "speedup",
                "identical");

    bool all_identical = true;

    {
        const auto config = hyperctx::default_device();
        const auto scenario = hyperctx::device_scenario(config);
        std::vector<hyperctx::PressSpec> schedule;
        for (int c = 0; c < scenario.context_count(); ++c) {
            hyperctx::PressSpec spec;
            spec.kind = hyperctx::PressKind::Joint;
            spec.context_index = c;
            schedule.push_back(spec);
        }
        const std::uint64_t trials = 400000;  // 2e6 trials in total

        hyperctx::EmpiricalBehavior serial(scenario);
        hyperctx::EmpiricalBehavior parallel(scenario);
        const double serial_ms = time_ms([&] {
            serial = hyperctx::run_experiment(config, schedule, 42, trials,
                                              {hyperctx::Execution::Serial});
        });
        const double parallel_ms = time_ms([&] {
            parallel = hyperctx::run_experiment(config, schedule, 42, trials,
                                                {hyperctx::Execution::Parallel});
        });
        const bool identical = serial.joint_counts() == parallel.joint_counts() &&
                               serial.single_counts() == parallel.single_counts() &&
                               serial.sequential_counts() == parallel.sequential_counts();
        all_identical = all_identical && identical;
        print_row("run_experiment (2e6 trials)", serial_ms, parallel_ms, identical);
    }

    {
        const auto scenario = hyperctx::build_n_cycle(18);
        std::vector<std::vector<hyperctx::Rational>> coefficients(
            scenario.context_count(),
            {hyperctx::Rational(1), hyperctx::Rational(-1), hyperctx::Rational(-1),
             hyperctx::Rational(1)});

        hyperctx::VertexExtremum serial;
        hyperctx::VertexExtremum parallel;
        const double serial_ms = time_ms(
            [&] { serial = hyperctx::vertex_extremum_serial(scenario, coefficients); });
        const double parallel_ms = time_ms(
            [&] { parallel = hyperctx::vertex_extremum_parallel(scenario, coefficients); });
        const bool identical = serial.min_value == parallel.min_value &&
                               serial.max_value == parallel.max_value &&
                               serial.argmin == parallel.argmin && serial.argmax == parallel.argmax;
        all_identical = all_identical && identical;
        print_row("vertex_extremum (18-cycle, 2^18)", serial_ms, parallel_ms, identical);
    }

    if (!all_identical) {
        std::printf("kernel mismatch\n");
        return 1;
    }
    return 0;
}
