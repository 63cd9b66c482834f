// Copyright 2026 The ionsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ionsim/drift.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "ionsim/random.h"

using namespace ionsim;

namespace {

struct Moments {
    double mean;
    double std;
};

Moments moments(const std::vector<double> &v) {
    double s = 0;
    double s2 = 0;
    for (double x : v) {
        s += x;
        s2 += x * x;
    }
    double n = static_cast<double>(v.size());
    double mean = s / n;
    return {mean, std::sqrt((s2 - n * mean * mean) / (n - 1))};
}

}  // namespace

TEST(drift, no_drift_is_exactly_one) {
    DriftPath path(DriftModel::none(), 5, 6, 1000);
    for (double f : path.factors()) {
        EXPECT_EQ(f, 1.0);
    }
    EXPECT_EQ(sample_drift(DriftModel::none(), 1, 2, 3), 1.0);
}

TEST(drift, stationary_moments) {
    DriftModel m;
    DriftPath path(m, 123, experiment_id("moments"), 100000);
    Moments got = moments(path.factors());
    EXPECT_NEAR(got.mean, 1.0, 0.001);
    EXPECT_NEAR(got.std / m.sigma_rel, 1.0, 0.05);
}

TEST(drift, std_matches_direct_gaussian_sampling) {
    // Independent draws N(1, sigma) as a reference, with the same count. The
    // OU path is correlated so its sample std scatters more; both must land
    // within 5% of sigma.
    DriftModel m;
    m.correlation_time_us = 1e5;  // ~1e4 independent blocks over 1e5 shots
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g(1.0, m.sigma_rel);
    std::vector<double> direct(100000);
    for (double &x : direct) {
        x = g(rng);
    }
    DriftPath path(m, 9, 1, 100000);
    EXPECT_NEAR(moments(direct).std / m.sigma_rel, 1, 0.05);
    EXPECT_NEAR(moments(path.factors()).std / moments(direct).std, 1, 0.05);
}

TEST(drift, lag_one_correlation) {
    DriftModel m;
    DriftPath path(m, 77, 3, 200000);
    const auto &f = path.factors();
    double num = 0;
    double den = 0;
    for (size_t k = 0; k + 1 < f.size(); k++) {
        num += (f[k] - 1) * (f[k + 1] - 1);
        den += (f[k] - 1) * (f[k] - 1);
    }
    EXPECT_NEAR(num / den, m.shot_correlation(), 0.01);
    EXPECT_NEAR(m.shot_correlation(), std::exp(-0.1), 1e-15);
}

TEST(drift, sample_drift_matches_path) {
    DriftModel m;
    DriftPath path(m, 42, 8, 500);
    for (size_t k : {0, 1, 17, 499}) {
        EXPECT_EQ(sample_drift(m, 42, 8, k), path.factor(k));
    }
    DriftPath longer(m, 42, 8, 900);
    for (size_t k = 0; k < 500; k++) {
        EXPECT_EQ(longer.factor(k), path.factor(k));
    }
}

TEST(drift, deterministic_and_seed_dependent) {
    DriftModel m;
    DriftPath a(m, 1, 2, 100);
    DriftPath b(m, 1, 2, 100);
    DriftPath c(m, 2, 2, 100);
    DriftPath d(m, 1, 3, 100);
    EXPECT_EQ(a.factors(), b.factors());
    EXPECT_NE(a.factors(), c.factors());
    EXPECT_NE(a.factors(), d.factors());
}

TEST(drift, validation) {
    EXPECT_THROW((DriftModel{-0.1, 1e6, 1e5}.validate()), std::invalid_argument);
    EXPECT_THROW((DriftModel{0.01, 0, 1e5}.validate()), std::invalid_argument);
    EXPECT_THROW((DriftModel{0.01, 1e6, 0}.validate()), std::invalid_argument);
}

TEST(random, substreams_are_distinct_and_stable) {
    EXPECT_EQ(substream_seed(1, 2, 3), substream_seed(1, 2, 3));
    EXPECT_NE(substream_seed(1, 2, 3), substream_seed(1, 2, 4));
    EXPECT_NE(substream_seed(1, 2, 3), substream_seed(1, 3, 3));
    EXPECT_NE(substream_seed(1, 2, 3), substream_seed(2, 2, 3));
    EXPECT_EQ(experiment_id("fig2"), experiment_id("fig2"));
    EXPECT_NE(experiment_id("fig2"), experiment_id("fig3"));
    // FNV-1a reference values.
    EXPECT_EQ(experiment_id(""), 0xCBF29CE484222325ULL);
    EXPECT_EQ(experiment_id("a"), 0xAF63DC4C8601EC8CULL);
    // splitmix64 of 0.
    EXPECT_EQ(mix64(0), 0xE220A8397B1DCDAFULL);
}
