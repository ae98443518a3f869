// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include <filesystem>
#include <vector>

#include "hadamax/association_schemes.hpp"
#include "hadamax/hadamard.hpp"
#include "hadamax/io.hpp"
#include "hadamax/kernels.hpp"

using namespace hadamax;

namespace {

const SignMatrix& matrix_q3_m7() {
    static const SignMatrix h = transform_biregular_q3(*FieldContext::build(227, 2)).matrix;
    return h;
}

const SignMatrix& matrix_regular_m5() {
    static const SignMatrix h = [] {
        auto part = parse_partition(read_file(std::filesystem::path(HADAMAX_DATA_DIR) / "m5.scheme"));
        const auto ext = scheme_field(part);
        align_partition(*ext, part);
        return transform_regular(*ext, part).matrix;
    }();
    return h;
}

struct SchemeFixture {
    FieldPtr ext;
    std::vector<std::uint8_t> labels;
    std::vector<FieldElement> zs;

    kernels::Labelling labelling() const { return {ext.get(), labels, 5}; }
};

const SchemeFixture& scheme_m5() {
    static const SchemeFixture f = [] {
        auto part = parse_partition(read_file(std::filesystem::path(HADAMAX_DATA_DIR) / "m5.scheme"));
        SchemeFixture s;
        s.ext = scheme_field(part);
        align_partition(*s.ext, part);
        s.labels = class_labels(*s.ext, part);
        s.zs.push_back(s.ext->zero());
        for (std::uint32_t j = 0; j < part.e; ++j) s.zs.push_back(s.ext->omega_pow(j));
        return s;
    }();
    return f;
}

template <auto Kernel>
void matrix_kernel(benchmark::State& state, const SignMatrix& (*source)()) {
    const auto& h = source();
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(h.view()));
    state.counters["n"] = static_cast<double>(h.order());
}

void BM_FirstNonorthogonalSerialQ3(benchmark::State& s) { matrix_kernel<kernels::serial::first_nonorthogonal>(s, matrix_q3_m7); }
void BM_FirstNonorthogonalParallelQ3(benchmark::State& s) { matrix_kernel<kernels::parallel::first_nonorthogonal>(s, matrix_q3_m7); }
void BM_FirstNonorthogonalSerialRegular(benchmark::State& s) { matrix_kernel<kernels::serial::first_nonorthogonal>(s, matrix_regular_m5); }
void BM_FirstNonorthogonalParallelRegular(benchmark::State& s) { matrix_kernel<kernels::parallel::first_nonorthogonal>(s, matrix_regular_m5); }
void BM_RowSumsSerialQ3(benchmark::State& s) { matrix_kernel<kernels::serial::row_sums>(s, matrix_q3_m7); }
void BM_RowSumsParallelQ3(benchmark::State& s) { matrix_kernel<kernels::parallel::row_sums>(s, matrix_q3_m7); }

void BM_TraceCountsSerial(benchmark::State& state) {
    const auto& f = scheme_m5();
    for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::class_trace_counts(f.labelling()));
}
void BM_TraceCountsParallel(benchmark::State& state) {
    const auto& f = scheme_m5();
    for (auto _ : state) benchmark::DoNotOptimize(kernels::parallel::class_trace_counts(f.labelling()));
}
void BM_ConvolutionSerial(benchmark::State& state) {
    const auto& f = scheme_m5();
    for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::class_convolution(f.labelling(), f.zs));
}
void BM_ConvolutionParallel(benchmark::State& state) {
    const auto& f = scheme_m5();
    for (auto _ : state) benchmark::DoNotOptimize(kernels::parallel::class_convolution(f.labelling(), f.zs));
}

}  // namespace

BENCHMARK(BM_FirstNonorthogonalSerialQ3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FirstNonorthogonalParallelQ3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FirstNonorthogonalSerialRegular)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FirstNonorthogonalParallelRegular)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RowSumsSerialQ3)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_RowSumsParallelQ3)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_TraceCountsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TraceCountsParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvolutionSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvolutionParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
