#include "kcbs/photon_stats.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kcbs {

namespace {

// Neumaier compensated summation, used where series terms alternate.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

constexpr int kOracleMaxN = 30;

}  // namespace

double s_coherent(double alpha_sq) {
  if (alpha_sq < 0.0) {
    throw std::invalid_argument("s_coherent: alpha_sq must be >= 0, got " +
                                std::to_string(alpha_sq));
  }
  return 5.0 *
         (std::exp(-alpha_sq / kSqrt5) - std::exp(-2.0 * alpha_sq / kSqrt5));
}

double classical_bound() { return kCoherentMixtureBound; }

double s_fock(int n) {
  if (n < 0) {
    throw std::invalid_argument("s_fock: n must be >= 0, got " +
                                std::to_string(n));
  }
  const double a = 1.0 - 1.0 / kSqrt5;
  const double b = 1.0 - 2.0 / kSqrt5;
  return 5.0 * (std::pow(a, n) - std::pow(b, n));
}

double s_mixture(const PhotonNumberMixture& mixture) {
  CompensatedSum sum;
  const auto& pops = mixture.populations();
  for (std::size_t n = 0; n < pops.size(); ++n) {
    sum.add(pops[n] * s_fock(static_cast<int>(n)));
  }
  return sum.value();
}

double loss_threshold_single() { return 2.0 / kSqrt5; }

double loss_threshold_two_photon() { return (5.0 - kSqrt5) / 4.0; }

double generating_oracle(int n) {
  if (n < 0 || n > kOracleMaxN) {
    throw std::invalid_argument("generating_oracle: n must be in 0.." +
                                std::to_string(kOracleMaxN) + ", got " +
                                std::to_string(n));
  }
  // exp(x) has coefficients 1/j!; the coherent-state curve expands as
  // sum_k 5 [(-c)^k - (-2c)^k] / k! x^k with c = 1/sqrt5. The x^n
  // coefficient of the product, times n!, reduces to a binomial sum:
  // binom(n, k) absorbs n! / (k! (n-k)!).
  const double c = 1.0 / kSqrt5;
  CompensatedSum sum;
  double binom = 1.0;  // binom(n, 0); exact in double for n <= 30
  double pow_a = 1.0;  // (-c)^k
  double pow_b = 1.0;  // (-2c)^k
  for (int k = 0; k <= n; ++k) {
    sum.add(5.0 * binom * (pow_a - pow_b));
    binom = binom * static_cast<double>(n - k) / static_cast<double>(k + 1);
    pow_a *= -c;
    pow_b *= -2.0 * c;
  }
  return sum.value();
}

double generating_oracle(int n, int m) {
  if (m < 0 || m > kOracleMaxN) {
    throw std::invalid_argument("generating_oracle: m must be in 0.." +
                                std::to_string(kOracleMaxN) + ", got " +
                                std::to_string(m));
  }
  if (n != m) {
    // The series in alpha * conj(alpha) has equal powers of alpha and
    // conj(alpha) in every term.
    if (n < 0 || n > kOracleMaxN) {
      throw std::invalid_argument("generating_oracle: n out of range");
    }
    return 0.0;
  }
  return generating_oracle(n);
}

NonclassicalityVerdict classify_s(double s) {
  NonclassicalityVerdict verdict;
  verdict.s = s;
  if (s > kSinglePhotonCertBound) {
    verdict.level = NonclassicalityLevel::kSinglePhotonCertified;
  } else if (s > kCoherentMixtureBound) {
    verdict.level = NonclassicalityLevel::kNonclassical;
  } else {
    verdict.level = NonclassicalityLevel::kClassicalCompatible;
  }
  verdict.few_photon_component = s >= kFewPhotonBound;
  return verdict;
}

const char* to_string(NonclassicalityLevel level) {
  switch (level) {
    case NonclassicalityLevel::kClassicalCompatible:
      return "classical-compatible";
    case NonclassicalityLevel::kNonclassical:
      return "nonclassical";
    case NonclassicalityLevel::kSinglePhotonCertified:
      return "single-photon-certified";
  }
  return "unknown";
}

}  // namespace kcbs
