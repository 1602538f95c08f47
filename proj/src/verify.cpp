#include "radval/verify.hpp"

#include "radval/error.hpp"
#include "radval/interval.hpp"
#include "radval/zonotope.hpp"

namespace radval {

std::string to_string(Domain domain) { return domain == Domain::Interval ? "interval" : "zonotope"; }

Domain parse_domain(const std::string& name) {
    if (name == "interval" || name == "box") return Domain::Interval;
    if (name == "zonotope" || name == "deepzono") return Domain::Zonotope;
    throw Error("unknown domain '" + name + "' (expected interval or zonotope)");
}

Verdict is_robust(const Network& net, const Tensor& x, double delta, Domain domain) {
    if (!(delta >= 0.0)) throw Error("robustness radius must be non-negative");
    const Prediction pred = forward(net, x);
    Verdict v;
    v.label = pred.label;
    v.margins.assign(net.label_count(), 0.0);

    if (delta == 0.0) {
        v.robust = true;
        for (std::size_t k = 0; k < net.label_count(); ++k) v.margins[k] = pred.scores[v.label] - pred.scores[k];
        return v;
    }

    v.robust = true;
    if (domain == Domain::Zonotope) {
        const Zonotope out = propagate_zonotope(net, input_region(x, delta));
        for (std::size_t k = 0; k < net.label_count(); ++k) {
            if (k == v.label) continue;
            v.margins[k] = dominance_lower_bound(out, v.label, k);
            v.robust = v.robust && v.margins[k] > 0.0;
        }
    } else {
        const Interval out = propagate_interval(net, box_region(x, delta));
        for (std::size_t k = 0; k < net.label_count(); ++k) {
            if (k == v.label) continue;
            v.margins[k] = out.lower[v.label] - out.upper[k];
            v.robust = v.robust && v.margins[k] > 0.0;
        }
    }
    return v;
}

}  // namespace radval
