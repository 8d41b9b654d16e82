/*
 * Copyright 2026 The pgg authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <cmath>

#include "pgg/ranker/ranker.hpp"
#include "pgg/util/hash.hpp"
#include "pgg/util/random.hpp"

namespace pgg::ranker {

namespace {

double
pair_margin(const LinearModel &m, const double *a, std::size_t na, const double *b, std::size_t nb)
{
    const std::size_t k = m.features.size();
    double s = m.bias, norm = 0.0;
    for (std::size_t j = 0; j < k; j++) {
        const auto f = static_cast<std::size_t>(m.features[j]);
        if (f >= na || f >= nb) throw std::invalid_argument("feature vector is shorter than the model expects");
        s += m.weights[j] * (a[f] - m.mean[j]) / m.stddev[j];
        s += m.weights[k + j] * (b[f] - m.mean[k + j]) / m.stddev[k + j];
    }
    for (double w : m.weights) norm += w * w;
    return norm > 0.0 ? s / std::sqrt(norm) : 0.0;
}

}  // namespace

double
LinearModel::margin(const std::vector<double> &a, const std::vector<double> &b) const
{
    return pair_margin(*this, a.data(), a.size(), b.data(), b.size());
}

double
LinearModel::confidence(const std::vector<double> &a, const std::vector<double> &b) const
{
    return (margin(a, b) - margin(b, a)) / 2.0;
}

double
LinearModel::accuracy(const std::vector<PairSample> &data) const
{
    if (data.empty()) return 0.0;
    std::size_t ok = 0;
    for (const auto &s : data) {
        const std::size_t half = s.x.size() / 2;
        const double *a = s.x.data(), *b = s.x.data() + half;
        const double c = (pair_margin(*this, a, half, b, half) - pair_margin(*this, b, half, a, half)) / 2.0;
        ok += (c > 0 && s.y > 0) || (c < 0 && s.y < 0);
    }
    return static_cast<double>(ok) / data.size();
}

LinearModel
train_model(const std::vector<PairSample> &data, std::vector<int> features, const TrainConfig &cfg,
            const std::vector<PairSample> *validation)
{
    cfg.validate();
    if (data.empty()) throw std::invalid_argument("no training samples");
    bool pos = false, neg = false;
    for (const auto &s : data) (s.y > 0 ? pos : neg) = true;
    if (!pos || !neg) throw std::invalid_argument("training samples carry a single label");
    const std::size_t half = data[0].x.size() / 2;
    for (const auto &s : data) {
        if (s.x.size() != 2 * half) throw std::invalid_argument("training samples differ in length");
    }
    for (int f : features) {
        if (f < 0 || static_cast<std::size_t>(f) >= half) throw std::invalid_argument("feature index out of range");
    }

    // standardization stats per copy, features without variance dropped
    const double n = static_cast<double>(data.size());
    LinearModel m;
    for (int f : features) {
        double mu[2] = {0, 0}, var[2] = {0, 0};
        for (const auto &s : data) {
            mu[0] += s.x[f];
            mu[1] += s.x[half + f];
        }
        mu[0] /= n;
        mu[1] /= n;
        for (const auto &s : data) {
            var[0] += (s.x[f] - mu[0]) * (s.x[f] - mu[0]);
            var[1] += (s.x[half + f] - mu[1]) * (s.x[half + f] - mu[1]);
        }
        const double sd0 = std::sqrt(var[0] / n), sd1 = std::sqrt(var[1] / n);
        if (!(sd0 > 1e-12) || !(sd1 > 1e-12)) continue;
        m.features.push_back(f);
        m.mean.push_back(mu[0]);
        m.stddev.push_back(sd0);
        m.mean.push_back(mu[1]);
        m.stddev.push_back(sd1);
    }
    const std::size_t k = m.features.size();
    // interleaved above; reorder to [copy 1 | copy 2]
    {
        std::vector<double> mean(2 * k), sd(2 * k);
        for (std::size_t j = 0; j < k; j++) {
            mean[j] = m.mean[2 * j];
            sd[j] = m.stddev[2 * j];
            mean[k + j] = m.mean[2 * j + 1];
            sd[k + j] = m.stddev[2 * j + 1];
        }
        m.mean = std::move(mean);
        m.stddev = std::move(sd);
    }
    m.weights.assign(2 * k, 0.0);
    m.samples = data.size();
    if (k == 0) return m;

    std::vector<double> z(data.size() * 2 * k);
    for (std::size_t i = 0; i < data.size(); i++) {
        for (std::size_t j = 0; j < k; j++) {
            z[i * 2 * k + j] = (data[i].x[m.features[j]] - m.mean[j]) / m.stddev[j];
            z[i * 2 * k + k + j] = (data[i].x[half + m.features[j]] - m.mean[k + j]) / m.stddev[k + j];
        }
    }
    std::vector<std::size_t> order(data.size());
    for (std::size_t i = 0; i < order.size(); i++) order[i] = i;
    std::vector<double> &w = m.weights;
    double t = 0;
    for (int epoch = 0; epoch < cfg.epochs; epoch++) {
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(epoch), data.size()));
        rng.shuffle(order);
        for (std::size_t i : order) {
            t += 1;
            const double eta = cfg.eta0 / (1.0 + cfg.lambda * cfg.eta0 * t);
            const double *zi = &z[i * 2 * k];
            const double y = data[i].y;
            double s = m.bias;
            for (std::size_t j = 0; j < 2 * k; j++) s += w[j] * zi[j];
            const double shrink = 1.0 - eta * cfg.lambda;
            for (double &x : w) x *= shrink;
            if (y * s < 1.0) {
                for (std::size_t j = 0; j < 2 * k; j++) w[j] += eta * y * zi[j];
                m.bias += eta * y;
            }
        }
    }
    m.train_accuracy = m.accuracy(data);
    if (validation && !validation->empty()) m.validation_accuracy = m.accuracy(*validation);
    return m;
}

namespace {

// Feature with the smallest combined weight over both pair copies.
int
weakest(const LinearModel &m)
{
    const std::size_t k = m.features.size();
    std::size_t best = 0;
    double lo = std::abs(m.weights[0]) + std::abs(m.weights[k]);
    for (std::size_t j = 1; j < k; j++) {
        const double x = std::abs(m.weights[j]) + std::abs(m.weights[k + j]);
        if (x < lo) {
            lo = x;
            best = j;
        }
    }
    return m.features[best];
}

std::vector<int>
without(const std::vector<int> &fs, int f)
{
    std::vector<int> out;
    for (int x : fs) {
        if (x != f) out.push_back(x);
    }
    return out;
}

}  // namespace

LinearModel
feature_elimination(const std::vector<PairSample> &data, std::vector<int> features, const TrainConfig &cfg,
                    const std::vector<PairSample> *validation)
{
    if (validation && validation->empty()) validation = nullptr;
    LinearModel m = train_model(data, std::move(features), cfg, validation);
    const auto limit = static_cast<std::size_t>(cfg.max_features);
    while (m.features.size() > limit) m = train_model(data, without(m.features, weakest(m)), cfg, validation);
    if (!validation) return m;
    const double reference = m.validation_accuracy;
    while (m.features.size() > static_cast<std::size_t>(cfg.min_features)) {
        LinearModel next = train_model(data, without(m.features, weakest(m)), cfg, validation);
        if (next.validation_accuracy < reference - cfg.max_validation_drop) break;
        m = std::move(next);
    }
    return m;
}

}  // namespace pgg::ranker
