#include "core/optimizer.hpp"

#include <cmath>
#include <string>

#include "core/errors.hpp"

namespace tlnid::nn {

void Optimizer::step(const std::vector<ParamView>& params) {
    for (const ParamView& p : params) {
        if (p.values.size() != p.grads.size()) {
            throw ShapeError("Optimizer: parameter/gradient size mismatch (" +
                             std::to_string(p.values.size()) + " vs " +
                             std::to_string(p.grads.size()) + ")");
        }
    }
    ++t_;

    if (cfg_.algo == Algo::sgd) {
        for (const ParamView& p : params) {
            for (size_t j = 0; j < p.values.size(); ++j) {
                p.values[j] -= cfg_.learning_rate * p.grads[j];
            }
        }
        return;
    }

    if (m_.size() < params.size()) {
        m_.resize(params.size());
        v_.resize(params.size());
    }
    const double bc1 = 1.0 - std::pow(double(cfg_.beta1), double(t_));
    const double bc2 = 1.0 - std::pow(double(cfg_.beta2), double(t_));
    for (size_t i = 0; i < params.size(); ++i) {
        const ParamView& p = params[i];
        if (m_[i].empty()) {
            m_[i].assign(p.values.size(), 0.0f);
            v_[i].assign(p.values.size(), 0.0f);
        } else if (m_[i].size() != p.values.size()) {
            throw ShapeError("Optimizer: moment buffer size changed between steps");
        }
        for (size_t j = 0; j < p.values.size(); ++j) {
            const float g = p.grads[j];
            m_[i][j] = cfg_.beta1 * m_[i][j] + (1.0f - cfg_.beta1) * g;
            v_[i][j] = cfg_.beta2 * v_[i][j] + (1.0f - cfg_.beta2) * g * g;
            const double mhat = double(m_[i][j]) / bc1;
            const double vhat = double(v_[i][j]) / bc2;
            p.values[j] -= float(double(cfg_.learning_rate) * mhat /
                                 (std::sqrt(vhat) + double(cfg_.epsilon)));
        }
    }
}

} // namespace tlnid::nn
