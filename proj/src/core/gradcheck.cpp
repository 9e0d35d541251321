#include "core/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "core/loss.hpp"

namespace tlnid::nn {

namespace {

struct Probe {
    double loss = 0.0;
    DecisionTrace decisions;
};

Probe evaluate(Network& net, const Tensor1D& input, int label, uint64_t seed) {
    Rng rng(seed);
    const Tensor1D out = net.forward(input, Mode::train, &rng);
    const BceResult bce = bce_loss(out.data.at(0), label);
    Probe p;
    p.loss = bce.loss;
    p.decisions = net.decisions();
    p.decisions.push_back(bce.clamped ? 1 : 0);
    return p;
}

} // namespace

GradCheckReport gradient_check(Network& net, const Tensor1D& input, int label,
                               const GradCheckConfig& cfg) {
    // Analytic pass with the mask stream every probe below will replay.
    Rng rng(cfg.seed);
    net.zero_grads();
    const Tensor1D out = net.forward(input, Mode::train, &rng);
    const BceResult bce = bce_loss(out.data.at(0), label);
    Tensor1D dl(1, 1);
    dl.data[0] = bce.grad;
    net.backward(dl);

    struct Slot {
        float* value;
        float analytic;
    };
    std::vector<Slot> slots;
    for (const ParamView& p : net.params()) {
        for (size_t j = 0; j < p.values.size(); ++j) {
            slots.push_back({&p.values[j], p.grads[j]});
        }
    }

    std::vector<size_t> picks(slots.size());
    for (size_t i = 0; i < picks.size(); ++i) picks[i] = i;
    if (cfg.sample_params > 0 && size_t(cfg.sample_params) < picks.size()) {
        Rng sampler(derive_seed(cfg.seed, 0x5a17));
        sampler.shuffle(picks);
        picks.resize(size_t(cfg.sample_params));
    }

    GradCheckReport report;
    const double h = double(cfg.step);
    for (size_t idx : picks) {
        float* v = slots[idx].value;
        const float saved = *v;

        *v = float(double(saved) + h);
        const Probe plus = evaluate(net, input, label, cfg.seed);
        *v = float(double(saved) - h);
        const Probe minus = evaluate(net, input, label, cfg.seed);
        *v = saved;

        if (plus.decisions != minus.decisions) {
            ++report.excluded;
            continue;
        }
        const double numeric = (plus.loss - minus.loss) / (2.0 * h);
        const double analytic = double(slots[idx].analytic);
        const double denom = std::max({std::fabs(analytic), std::fabs(numeric), 1e-8});
        report.max_rel_error = std::max(report.max_rel_error,
                                        std::fabs(analytic - numeric) / denom);
        ++report.checked;
    }

    // Leave the caches consistent with unperturbed parameters.
    evaluate(net, input, label, cfg.seed);
    return report;
}

} // namespace tlnid::nn
