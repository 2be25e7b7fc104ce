#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "rkhs/kernel_spec.hpp"
#include "rkhs/verdict.hpp"

namespace rkhs {

// Each combinator takes verdicts for the component pairs and returns the
// verdict for the combined pair. Propagated constants are UpperBound except
// under scaling, which is exact.

// (K1 + K2, G1 + G2): Upper(max(l1, l2))
InclusionVerdict combine_sum(const InclusionVerdict& v1, const InclusionVerdict& v2);
// (K1 + K2, G): Upper(l1 + l2)
InclusionVerdict combine_sum_same_target(const InclusionVerdict& v1, const InclusionVerdict& v2);
// (aK, bG): (a/b) l
InclusionVerdict combine_scale(double a, double b, const InclusionVerdict& v);
// (K1 K2, G1 G2) and (K1 (x) K2, G1 (x) G2): Upper(l1 l2)
InclusionVerdict combine_product(const InclusionVerdict& v1, const InclusionVerdict& v2);
InclusionVerdict combine_tensor(const InclusionVerdict& v1, const InclusionVerdict& v2);

struct ComposedVerdicts {
  KernelSpec k;
  KernelSpec g_scaled;  // phi(l G)
  InclusionVerdict scaled;
  KernelSpec g_plain;  // phi(G)
  InclusionVerdict plain;  // Included when l <= 1, otherwise Unknown
};

ComposedVerdicts combine_exp(const KernelSpec& k, const KernelSpec& g, const InclusionVerdict& v);
// phi(z) = sum_j coeffs[j] z^j with nonnegative coefficients.
ComposedVerdicts combine_series(const std::vector<double>& coeffs, const KernelSpec& k,
                                const KernelSpec& g, const InclusionVerdict& v);

// Pointwise limits K_j -> K, G_j -> G. The list form bounds by the sup of
// the supplied constants; the generator form samples j = 2^0 .. 2^40 and
// reports Unknown when the constants keep growing.
InclusionVerdict combine_limit(const std::vector<InclusionVerdict>& verdicts);
InclusionVerdict combine_limit(const std::function<InclusionVerdict(long long)>& verdict_at);

}  // namespace rkhs
