#include "hetnet/prospect.hpp"

#include <cmath>

#include "hetnet/types.hpp"

namespace hetnet {

DecisionModel DecisionModel::prospect(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("Prelec exponent must lie in (0,1)");
    DecisionModel m;
    m.pt_ = true;
    m.alpha_ = alpha;
    return m;
}

namespace {

double prelec(double p, double exponent) {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    return std::exp(-std::pow(-std::log(p), exponent));
}

}  // namespace

double weight(double p, const DecisionModel& model) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability outside [0,1]");
    return model.is_pt() ? prelec(p, model.prelec_alpha()) : p;
}

double weight_inverse(double q, const DecisionModel& model) {
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("probability outside [0,1]");
    return model.is_pt() ? prelec(q, 1.0 / model.prelec_alpha()) : q;
}

}  // namespace hetnet
