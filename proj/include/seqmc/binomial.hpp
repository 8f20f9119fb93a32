#pragma once

#include "seqmc/types.hpp"

namespace seqmc {

struct BinomialParams {
  Step n = 0;
  double p = 0.0;
  Step x = 0;
};

/// Natural log of C(n,x) p^x (1-p)^(n-x).
///
/// Uses Loader's saddle-point decomposition (Stirling remainders plus the
/// deviance term bd0), which keeps full relative accuracy for n up to 1e7 and
/// beyond where lgamma differences would cancel. Degenerate p are exact:
/// -infinity for impossible outcomes, 0 when the outcome is certain.
/// Throws PreconditionError unless 0 <= x <= n and 0 <= p <= 1.
double log_binom_pmf(const BinomialParams& params);

/// exp(log_binom_pmf(params)).
double binom_pmf(const BinomialParams& params);

inline double log_binom_pmf(Step n, double p, Step x) { return log_binom_pmf({n, p, x}); }
inline double binom_pmf(Step n, double p, Step x) { return binom_pmf({n, p, x}); }

}  // namespace seqmc
