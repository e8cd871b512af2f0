// Copyright (c) 2026 The LuxGen Toolkit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "luxgen/common/rng.hpp"
#include "luxgen/model/transformer.hpp"
#include "support/model_fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace luxgen::testing {

struct GradCheckSample {
    std::string tensor;
    Eigen::Index index;
    double analytic;
    double numeric;
    double rel_error;
};

/// Compares analytic gradients with central finite differences at `coords`
/// random coordinates (double precision). Coordinates whose analytic
/// gradient is below `min_magnitude` are redrawn so the relative error is
/// measured where it is meaningful.
inline std::vector<GradCheckSample> gradient_check(const model::ModelConfig &config, const Batch &batch, int coords,
                                                   std::uint64_t seed, double step = 1e-4,
                                                   double min_magnitude = 1e-7) {
    model::Weights<double> w = model::init_weights<double>(config, seed);
    perturb(w, seed + 1, 0.05);
    const model::Weights<double> g = model::gradients(w, config, batch).gradients;

    struct Slot {
        std::string name;
        model::Matrix<double> *param;
        const model::Matrix<double> *grad;
    };
    std::vector<Slot> slots;
    model::visit_tensors([&](const std::string &name, model::TensorKind, model::Matrix<double> &p,
                             const model::Matrix<double> &gr) { slots.push_back({name, &p, &gr}); },
                         w, g);

    Rng rng(seed + 2);
    std::vector<GradCheckSample> samples;
    int attempts = 0;
    while (static_cast<int>(samples.size()) < coords && attempts < 100000) {
        ++attempts;
        const Slot &s = slots[rng.below(slots.size())];
        const auto idx = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(s.param->size())));
        const double analytic = s.grad->data()[idx];
        if (std::abs(analytic) < min_magnitude) {
            continue;
        }
        double &value = s.param->data()[idx];
        const double saved = value;
        value = saved + step;
        const double plus = model::loss(model::forward(w, config, batch).logits, batch).value;
        value = saved - step;
        const double minus = model::loss(model::forward(w, config, batch).logits, batch).value;
        value = saved;
        const double numeric = (plus - minus) / (2.0 * step);
        const double rel = std::abs(analytic - numeric) / std::max(std::abs(analytic), std::abs(numeric));
        samples.push_back({s.name, idx, analytic, numeric, rel});
    }
    return samples;
}

}  // namespace luxgen::testing
