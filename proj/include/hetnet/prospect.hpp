#pragma once

namespace hetnet {

inline constexpr double kInvE = 0.36787944117144233;

class DecisionModel {
public:
    static DecisionModel eut() { return DecisionModel{}; }
    // Prelec weighting with 0 < alpha < 1.
    static DecisionModel prospect(double alpha);

    bool is_pt() const { return pt_; }
    double prelec_alpha() const { return alpha_; }

private:
    DecisionModel() = default;
    bool pt_ = false;
    double alpha_ = 1.0;
};

double weight(double p, const DecisionModel& model);
double weight_inverse(double q, const DecisionModel& model);

}  // namespace hetnet
