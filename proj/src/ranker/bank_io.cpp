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

#include "pgg/ranker/ranker.hpp"
#include "pgg/util/hash.hpp"

namespace pgg::ranker {

namespace {

std::string
model_name(int m)
{
    return std::string(features::state_class_name(static_cast<StateClass>(m / 2))) + (m % 2 ? "/complement" : "/original");
}

bool
has_both_labels(const std::vector<PairSample> &s)
{
    bool pos = false, neg = false;
    for (const auto &x : s) (x.y > 0 ? pos : neg) = true;
    return pos && neg;
}

}  // namespace

const LinearModel *
RankerBank::model(StateClass c, bool complement) const
{
    const auto &m = models[model_index(c, complement)];
    return m ? &*m : nullptr;
}

RankerBank
train_bank(const PairDataset &train, const PairDataset *validation, const TrainConfig &cfg)
{
    cfg.validate();
    const auto &schema = features::default_schema();
    RankerBank bank;
    bank.schema_id = schema.id();
    bank.config = cfg;
    bank.dataset_hash = train.hash();
    for (int m = 0; m < num_models; m++) {
        const auto &data = train.samples[m];
        if (!has_both_labels(data)) {
            bank.warnings.push_back("no model for " + model_name(m) + "; ranking falls back to trueness");
            continue;
        }
        TrainConfig c = cfg;
        c.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(m));
        const std::vector<PairSample> *val = validation ? &validation->samples[m] : nullptr;
        bank.models[m] = feature_elimination(data, schema.subset(static_cast<StateClass>(m / 2)), c, val);
    }
    return bank;
}

nlohmann::json
RankerBank::to_json() const
{
    const auto &schema = features::default_schema();
    nlohmann::json ms = nlohmann::json::array();
    for (int m = 0; m < num_models; m++) {
        if (!models[m]) continue;
        const LinearModel &lm = *models[m];
        std::vector<std::string> names;
        for (int f : lm.features) names.push_back(schema.names.at(f));
        ms.push_back({{"class", features::state_class_name(static_cast<StateClass>(m / 2))},
                      {"complement", m % 2 == 1},
                      {"features", names},
                      {"mean", lm.mean},
                      {"stddev", lm.stddev},
                      {"weights", lm.weights},
                      {"bias", lm.bias},
                      {"train_accuracy", lm.train_accuracy},
                      {"validation_accuracy", lm.validation_accuracy},
                      {"samples", lm.samples}});
    }
    return {{"format", "pgg-ranker-bank"},
            {"version", 1},
            {"schema", schema_id},
            {"config", config.to_json()},
            {"dataset_hash", dataset_hash},
            {"warnings", warnings},
            {"models", ms}};
}

RankerBank
RankerBank::from_json(const nlohmann::json &j)
{
    const auto &schema = features::default_schema();
    try {
        if (j.at("format") != "pgg-ranker-bank" || j.at("version") != 1) throw std::invalid_argument("not a version 1 ranker bank");
        RankerBank b;
        b.schema_id = j.at("schema").get<std::string>();
        if (b.schema_id != schema.id()) throw std::invalid_argument("bank was trained on feature schema " + b.schema_id + ", expected " + schema.id());
        const auto &c = j.at("config");
        b.config.lambda = c.at("lambda").get<double>();
        b.config.epochs = c.at("epochs").get<int>();
        b.config.eta0 = c.at("eta0").get<double>();
        b.config.pair_cap = c.at("pair_cap").get<int>();
        b.config.min_features = c.at("min_features").get<int>();
        b.config.max_features = c.at("max_features").get<int>();
        b.config.max_validation_drop = c.at("max_validation_drop").get<double>();
        b.config.seed = c.at("seed").get<std::uint64_t>();
        b.dataset_hash = j.at("dataset_hash").get<std::string>();
        b.warnings = j.at("warnings").get<std::vector<std::string>>();
        for (const auto &mj : j.at("models")) {
            LinearModel lm;
            for (const auto &n : mj.at("features")) {
                int f = schema.index(n.get<std::string>());
                if (f < 0) throw std::invalid_argument("unknown feature " + n.get<std::string>());
                lm.features.push_back(f);
            }
            lm.mean = mj.at("mean").get<std::vector<double>>();
            lm.stddev = mj.at("stddev").get<std::vector<double>>();
            lm.weights = mj.at("weights").get<std::vector<double>>();
            lm.bias = mj.at("bias").get<double>();
            lm.train_accuracy = mj.at("train_accuracy").get<double>();
            lm.validation_accuracy = mj.at("validation_accuracy").get<double>();
            lm.samples = mj.at("samples").get<std::size_t>();
            const std::size_t k2 = 2 * lm.features.size();
            if (lm.mean.size() != k2 || lm.stddev.size() != k2 || lm.weights.size() != k2) {
                throw std::invalid_argument("model vectors do not match its feature list");
            }
            for (double sd : lm.stddev) {
                if (!(sd > 0.0)) throw std::invalid_argument("model has a non-positive standard deviation");
            }
            const int m = model_index(features::parse_state_class(mj.at("class").get<std::string>()), mj.at("complement").get<bool>());
            if (b.models[m]) throw std::invalid_argument("duplicate model for " + model_name(m));
            b.models[m] = std::move(lm);
        }
        return b;
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("malformed ranker bank: ") + e.what());
    }
}


nlohmann::json
dataset_to_json(const PairDataset &d)
{
    nlohmann::json samples = nlohmann::json::array();
    for (int m = 0; m < num_models; m++) {
        for (const auto &s : d.samples[m]) samples.push_back({{"model", m}, {"game", s.game_id}, {"y", s.y}, {"x", s.x}});
    }
    return {{"format", "pgg-pair-dataset"},
            {"version", 1},
            {"schema_id", features::default_schema().id()},
            {"hash", d.hash()},
            {"samples", samples},
            {"warnings", d.warnings}};
}

PairDataset
dataset_from_json(const nlohmann::json &j)
{
    if (j.value("format", "") != "pgg-pair-dataset" || j.value("version", 0) != 1) {
        throw std::runtime_error("not a pair dataset (format pgg-pair-dataset, version 1)");
    }
    const std::string schema = j.at("schema_id").get<std::string>();
    if (schema != features::default_schema().id()) {
        throw std::runtime_error("pair dataset uses feature schema " + schema + ", expected " + features::default_schema().id());
    }
    PairDataset d;
    for (const auto &s : j.at("samples")) {
        const int m = s.at("model").get<int>();
        if (m < 0 || m >= num_models) throw std::runtime_error("pair dataset: model index out of range");
        PairSample p;
        p.x = s.at("x").get<std::vector<double>>();
        p.y = s.at("y").get<int>();
        p.state_class = static_cast<StateClass>(m / 2);
        p.complement = m % 2 == 1;
        p.game_id = s.at("game").get<std::string>();
        d.samples[m].push_back(std::move(p));
    }
    d.warnings = j.value("warnings", std::vector<std::string>{});
    if (d.hash() != j.at("hash").get<std::string>()) throw std::runtime_error("pair dataset hash mismatch");
    return d;
}

}  // namespace pgg::ranker
