#include "train/trainer.hpp"

#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>

#include <nlohmann/json.hpp>

#include "core/errors.hpp"
#include "core/loss.hpp"

namespace tlnid::train {

using namespace tlnid::nn;

Tensor1D SampleSet::tensor(size_t i) const {
    Tensor1D t(length, channels);
    std::memcpy(t.data.data(), features.data() + i * t.size(), t.size() * sizeof(float));
    return t;
}

SampleSet SampleSet::from_encoded(const prep::EncodedDataset& data) {
    SampleSet s;
    s.length = data.width;
    s.channels = 1;
    s.features = data.features;
    s.labels = data.labels;
    return s;
}

namespace {

struct TrainHooks {
    // Forward + loss + backward for one sample; accumulates gradients.
    std::function<double(const Tensor1D& x, int label, Rng* rng)> sample_pass;
    std::function<double(const SampleSet&)> infer_accuracy;
    std::function<void()> zero_grads;
    std::vector<ParamView> trainable;
};

std::string trajectory_text(const std::vector<double>& losses) {
    std::string s = "[";
    const size_t from = losses.size() > 5 ? losses.size() - 5 : 0;
    for (size_t i = from; i < losses.size(); ++i) {
        if (i > from) s += ", ";
        s += std::to_string(losses[i]);
    }
    return s + "]";
}

TrainingHistory run_training(const TrainHooks& hooks, const SampleSet& data,
                             const TrainConfig& cfg, Rng& rng, const SampleSet* validation) {
    if (cfg.batch_size < 1) throw ConfigError("train: batch size must be >= 1");
    if (cfg.epochs < 0) throw ConfigError("train: negative epoch count");
    if (data.size() == 0) throw DataError("train: empty training set");
    if (size_t(cfg.batch_size) > data.size()) {
        throw ConfigError("train: batch size " + std::to_string(cfg.batch_size) +
                          " exceeds dataset size " + std::to_string(data.size()));
    }

    Optimizer opt({cfg.optimizer, cfg.learning_rate});
    std::vector<size_t> order(data.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;

    TrainingHistory history;
    std::vector<double> batch_losses;
    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        const auto t0 = std::chrono::steady_clock::now();
        rng.shuffle(order);

        double epoch_loss = 0.0;
        size_t batch_index = 0;
        for (size_t at = 0; at < order.size(); at += size_t(cfg.batch_size), ++batch_index) {
            const size_t n = std::min(size_t(cfg.batch_size), order.size() - at);
            hooks.zero_grads();
            double batch_loss = 0.0;
            for (size_t j = 0; j < n; ++j) {
                const size_t i = order[at + j];
                batch_loss += hooks.sample_pass(data.tensor(i), data.labels[i], &rng);
            }
            batch_loss /= double(n);
            if (!std::isfinite(batch_loss)) {
                throw NumericError("train: non-finite loss at epoch " + std::to_string(epoch) +
                                   ", batch " + std::to_string(batch_index) +
                                   "; recent batch losses " + trajectory_text(batch_losses));
            }
            batch_losses.push_back(batch_loss);
            epoch_loss += batch_loss * double(n);

            const float inv = 1.0f / float(n);
            for (const ParamView& p : hooks.trainable) {
                for (float& g : p.grads) g *= inv;
            }
            opt.step(hooks.trainable);
        }

        EpochRecord rec;
        rec.epoch = epoch;
        rec.train_loss = epoch_loss / double(data.size());
        rec.train_acc = hooks.infer_accuracy(data);
        if (validation != nullptr) rec.val_acc = hooks.infer_accuracy(*validation);
        rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        history.epochs.push_back(rec);
    }
    return history;
}

double network_accuracy(Network& net, const SampleSet& data, float threshold) {
    if (data.size() == 0) return 0.0;
    size_t hits = 0;
    for (size_t i = 0; i < data.size(); ++i) {
        const Tensor1D out = net.forward(data.tensor(i), Mode::infer, nullptr);
        const bool attack = out.data.at(0) >= threshold;
        if (int(attack) == int(data.labels[i])) ++hits;
    }
    return double(hits) / double(data.size());
}

TrainHooks network_hooks(Network& net) {
    TrainHooks hooks;
    hooks.sample_pass = [&net](const Tensor1D& x, int label, Rng* rng) {
        const Tensor1D out = net.forward(x, Mode::train, rng);
        const BceResult bce = bce_loss(out.data.at(0), label);
        Tensor1D dl(1, 1);
        dl.data[0] = bce.grad;
        net.backward(dl);
        return bce.loss;
    };
    hooks.infer_accuracy = [&net](const SampleSet& s) { return network_accuracy(net, s, 0.5f); };
    hooks.zero_grads = [&net] { net.zero_grads(); };
    hooks.trainable = net.trainable_params();
    return hooks;
}

TrainHooks composed_hooks(model::ComposedModel& m) {
    TrainHooks hooks;
    hooks.sample_pass = [&m](const Tensor1D& x, int label, Rng* rng) {
        const Tensor1D feats = m.features(x, Mode::train, rng);
        const Tensor1D out = m.top.forward(feats, Mode::train, rng);
        const BceResult bce = bce_loss(out.data.at(0), label);
        Tensor1D dl(1, 1);
        dl.data[0] = bce.grad;
        // Input gradients keep flowing through the (possibly frozen) base.
        m.base.backward(m.top.backward(dl));
        return bce.loss;
    };
    hooks.infer_accuracy = [&m](const SampleSet& s) {
        size_t hits = 0;
        for (size_t i = 0; i < s.size(); ++i) {
            const bool attack = m.predict(s.tensor(i)) >= 0.5f;
            if (int(attack) == int(s.labels[i])) ++hits;
        }
        return s.size() ? double(hits) / double(s.size()) : 0.0;
    };
    hooks.zero_grads = [&m] {
        m.base.zero_grads();
        m.top.zero_grads();
    };
    hooks.trainable = m.trainable_params();
    return hooks;
}

} // namespace

TrainingHistory train(Network& net, const SampleSet& data, const TrainConfig& cfg, Rng& rng,
                      const SampleSet* validation) {
    return run_training(network_hooks(net), data, cfg, rng, validation);
}

TrainingHistory train_composed(model::ComposedModel& m, const SampleSet& data,
                               const TrainConfig& cfg, Rng& rng, const SampleSet* validation) {
    return run_training(composed_hooks(m), data, cfg, rng, validation);
}

double accuracy(Network& net, const SampleSet& data, float threshold) {
    return network_accuracy(net, data, threshold);
}

nlohmann::json CvReport::to_json() const {
    return nlohmann::json{{"fold_val_acc", fold_val_acc}, {"mean", mean}, {"stddev", stddev}};
}

namespace {

SampleSet take_rows(const SampleSet& all, const std::vector<size_t>& idx) {
    SampleSet out;
    out.length = all.length;
    out.channels = all.channels;
    const size_t w = size_t(all.length) * size_t(all.channels);
    out.features.reserve(idx.size() * w);
    out.labels.reserve(idx.size());
    for (size_t i : idx) {
        out.features.insert(out.features.end(), all.features.begin() + i * w,
                            all.features.begin() + (i + 1) * w);
        out.labels.push_back(all.labels[i]);
    }
    return out;
}

model::ModelSpec base_only(const model::ModelSpec& spec) {
    model::ModelSpec s = spec;
    s.target.reset();
    return s;
}

} // namespace

Stage1Result stage1_train(const model::ModelSpec& spec, const prep::EncodedDataset& base_train,
                          const TrainConfig& cfg, int folds) {
    const model::ModelSpec stage1_spec = base_only(spec);
    const SampleSet all = SampleSet::from_encoded(base_train);

    Stage1Result result;
    if (folds > 0) {
        if (folds < 2) throw ConfigError("stage1: folds must be 0 or >= 2");
        const auto fold_plan = data::kfold_indices(all.size(), folds, cfg.seed);
        for (size_t f = 0; f < fold_plan.size(); ++f) {
            const uint64_t fold_seed = derive_seed(cfg.seed, f + 1);
            model::ComposedModel m = build_model(stage1_spec, fold_seed);
            const SampleSet fold_train = take_rows(all, fold_plan[f].first);
            const SampleSet fold_val = take_rows(all, fold_plan[f].second);

            TrainConfig fold_cfg = cfg;
            fold_cfg.seed = fold_seed;
            Rng rng(derive_seed(fold_seed, 1));
            try {
                // Stage-1 stack is base + temporary head; both live in one
                // pass here because nothing is frozen yet.
                TrainHooks hooks = composed_hooks(m);
                run_training(hooks, fold_train, fold_cfg, rng, nullptr);
                result.cv.fold_val_acc.push_back(hooks.infer_accuracy(fold_val));
            } catch (const NumericError& e) {
                throw NumericError("stage1: fold " + std::to_string(f) + " failed: " + e.what());
            } catch (const Error& e) {
                throw StateError("stage1: fold " + std::to_string(f) + " failed: " + e.what());
            }
        }
        double sum = 0;
        for (double a : result.cv.fold_val_acc) sum += a;
        result.cv.mean = sum / double(result.cv.fold_val_acc.size());
        double var = 0;
        for (double a : result.cv.fold_val_acc) var += (a - result.cv.mean) * (a - result.cv.mean);
        result.cv.stddev = std::sqrt(var / double(result.cv.fold_val_acc.size()));
    }

    // The shipped checkpoint retrains on the full base training split with
    // the same epoch budget; the CV numbers above stay an honest estimate.
    model::ComposedModel final_model = build_model(stage1_spec, cfg.seed);
    Rng rng(derive_seed(cfg.seed, 1));
    TrainHooks hooks = composed_hooks(final_model);
    result.final_history = run_training(hooks, all, cfg, rng, nullptr);
    result.checkpoint = model::Checkpoint::from_model(final_model);
    return result;
}

Stage2Result stage2_train(const model::Checkpoint& base_checkpoint,
                          const model::ModelSpec& tl_spec,
                          const prep::EncodedDataset& target_train, const TrainConfig& cfg,
                          const prep::EncodedDataset* validation, bool reuse_frozen_features) {
    model::ComposedModel m = assemble_tl(base_checkpoint, tl_spec, cfg.seed);

    Stage2Result result;
    Rng rng(derive_seed(cfg.seed, 1));
    if (reuse_frozen_features) {
        // The base is frozen and runs dropout-free, so its outputs are fixed:
        // compute them once and train ConvNet-T + head on the feature maps.
        auto featurize = [&m](const SampleSet& in) {
            SampleSet out;
            out.labels = in.labels;
            for (size_t i = 0; i < in.size(); ++i) {
                const Tensor1D f = m.base.forward(in.tensor(i), Mode::infer, nullptr);
                if (i == 0) {
                    out.length = f.length;
                    out.channels = f.channels;
                    out.features.reserve(in.size() * f.size());
                }
                out.features.insert(out.features.end(), f.data.begin(), f.data.end());
            }
            return out;
        };
        const SampleSet feats = featurize(SampleSet::from_encoded(target_train));
        SampleSet val_feats;
        if (validation != nullptr) val_feats = featurize(SampleSet::from_encoded(*validation));
        result.history = train(m.top, feats, cfg, rng, validation ? &val_feats : nullptr);
    } else {
        const SampleSet data = SampleSet::from_encoded(target_train);
        SampleSet val;
        if (validation != nullptr) val = SampleSet::from_encoded(*validation);
        result.history =
            run_training(composed_hooks(m), data, cfg, rng, validation ? &val : nullptr);
    }
    result.checkpoint = model::Checkpoint::from_model(m);
    return result;
}

void curve_export(const TrainingHistory& history, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out << "epoch,train_acc,val_acc\n";
    char line[96];
    for (const EpochRecord& r : history.epochs) {
        if (r.val_acc < 0) {
            std::snprintf(line, sizeof line, "%d,%.17g,nan\n", r.epoch, r.train_acc);
        } else {
            std::snprintf(line, sizeof line, "%d,%.17g,%.17g\n", r.epoch, r.train_acc, r.val_acc);
        }
        out << line;
    }
    if (!out) throw IoError("short write to " + path);
}

} // namespace tlnid::train
