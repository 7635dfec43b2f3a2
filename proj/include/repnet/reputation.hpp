#pragma once

#include <vector>

#include "repnet/types.hpp"

namespace repnet {

/// Image update. Difference variant moves the level by a fraction of the
/// headroom towards +1 (positive impact) or towards -1 (negative impact);
/// saturation adds alpha*i and clamps to [-1,1].
inline double update_u(const UpdateRule& rule, double r, double i) {
    if (!(r >= -1.0 && r <= 1.0))
        throw RangeError("image level " + std::to_string(r) + " outside [-1,1]");
    if (!(i >= -1.0 && i <= 1.0))
        throw RangeError("impact " + std::to_string(i) + " outside [-1,1]");
    if (rule.variant == UpdateVariant::Difference)
        return i >= 0.0 ? r + rule.alpha * (1.0 - r) * i
                        : r + rule.alpha * (r + 1.0) * i;
    const double v = r + rule.alpha * i;
    return v > 1.0 ? 1.0 : (v < -1.0 ? -1.0 : v);
}

/// The image of subject h held by observer i, as estimator g currently
/// perceives it: a belief-weighted expectation over both agents' states and
/// actions of the impacts flowing between them. delta weighs how i treats h
/// against how h treats i. Independent of g's own state.
inline double perceived_image(const DomainSpec& spec, [[maybe_unused]] int g, int h, int i,
                              const BeliefMap& beliefs, const ActionDistribution& ad,
                              double delta) {
    const int nS = spec.num_states();
    const int nA = spec.num_actions();
    double total = 0.0;
    for (int sh = 0; sh < nS; ++sh) {
        const double bh = beliefs[h][sh];
        for (int si = 0; si < nS; ++si) {
            const double bi = beliefs[i][si];
            double inner = 0.0;
            for (int a = 0; a < nA; ++a) {
                inner += delta * ad[i][si][a] * spec.impact.at(h, sh, i, si, a) +
                         (1.0 - delta) * ad[h][sh][a] * spec.impact.at(i, si, h, sh, a);
            }
            total += bh * bi * inner;
        }
    }
    return total;
}

/// One full image-profile update for estimator g: every (h,i) entry moves
/// towards its currently perceived image using spec.update_rule with alpha
/// overridden by the given learning rate.
inline ImageProfile image_expectation(const DomainSpec& spec, int g, const ImageProfile& img,
                                      double alpha, const BeliefMap& beliefs,
                                      const ActionDistribution& ad) {
    const int nG = spec.num_agents();
    UpdateRule rule = spec.update_rule;
    rule.alpha = alpha;
    ImageProfile out(nG, std::vector<double>(nG, 0.0));
    for (int h = 0; h < nG; ++h)
        for (int i = 0; i < nG; ++i)
            out[h][i] = update_u(rule, img[h][i],
                                 perceived_image(spec, g, h, i, beliefs, ad, spec.hyper.delta));
    return out;
}

/// h's reputation according to g: the average of every rater's image of h,
/// each weighted by g's image of the rater. g's own rating is weighted 1;
/// a negatively regarded rater counts in the opposite direction.
inline double rep_of(int g, int h, const ImageProfile& img) {
    const int nG = static_cast<int>(img.size());
    double sum = img[h][g];
    for (int i = 0; i < nG; ++i)
        if (i != g) sum += img[h][i] * img[i][g];
    return sum / nG;
}

}  // namespace repnet
