#include <gtest/gtest.h>

#include "hadamax/association_schemes.hpp"
#include "hadamax/hadamard.hpp"
#include "hadamax/kernels.hpp"
#include "test_support.hpp"

using namespace hadamax;

namespace {

SignMatrix noisy(std::size_t n, std::uint64_t stream) {
    hadamax::testing::CounterStream rng(stream);
    SignMatrix h(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (rng.below(2)) h.set(i, j, -1);
        }
    }
    return h;
}

}  // namespace

TEST(Kernels, RowDot) {
    const auto h = SignMatrix::from_rows({{1, 1, -1}, {1, -1, -1}, {-1, -1, -1}});
    EXPECT_EQ(kernels::row_dot(h.view(), 0, 1), 1);
    EXPECT_EQ(kernels::row_dot(h.view(), 0, 2), -1);
    EXPECT_EQ(kernels::row_dot(h.view(), 2, 2), 3);
}

TEST(Kernels, SerialAndParallelAgreeOnMatrices) {
    for (std::size_t n : {1u, 4u, 63u, 64u, 65u, 130u}) {
        const auto h = noisy(n, n);
        EXPECT_EQ(kernels::serial::row_sums(h.view()), kernels::parallel::row_sums(h.view()));
        EXPECT_EQ(kernels::serial::first_nonorthogonal(h.view()), kernels::parallel::first_nonorthogonal(h.view()));
    }
    // A Hadamard matrix with one late defect.
    auto h = transform_biregular_q1(*FieldContext::build(13, 2)).matrix;
    EXPECT_EQ(kernels::serial::first_nonorthogonal(h.view()), std::nullopt);
    EXPECT_EQ(kernels::parallel::first_nonorthogonal(h.view()), std::nullopt);
    h.set(20, 25, -h.at(20, 25));
    const auto s = kernels::serial::first_nonorthogonal(h.view());
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(s, kernels::parallel::first_nonorthogonal(h.view()));
    EXPECT_EQ(s->first, 0u);
    EXPECT_EQ(s->second, 20u);
}

TEST(Kernels, SerialAndParallelAgreeOnFields) {
    SchemePartition part{17, 3, 12, {{{1, 5}, {0, 2, 9, 10}, {7, 11}, {3, 4, 6, 8}}}, 7};
    auto ext = scheme_field(part);
    const auto labels = class_labels(*ext, part);
    const kernels::Labelling lab{ext.get(), labels, 5};
    std::vector<FieldElement> zs;
    for (std::uint32_t i = 0; i < 40; ++i) zs.push_back(ext->element_at(i * 7));
    EXPECT_EQ(kernels::serial::class_convolution(lab, zs), kernels::parallel::class_convolution(lab, zs));
    EXPECT_EQ(kernels::serial::class_trace_counts(lab), kernels::parallel::class_trace_counts(lab));
    EXPECT_GE(kernels::parallel::thread_count(), 1);
}
