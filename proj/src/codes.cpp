#include "qreduce/codes.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace qreduce {

namespace {

void require_logical(const LogicalQubit& q) {
  const Real nrm2 = std::norm(q.a0) + std::norm(q.a1);
  if (std::abs(nrm2 - 1.0) > kNormTol) {
    throw ArgumentError("logical qubit is not normalized within 1e-10");
  }
}

void require_n(int n, const Limits& limits, bool dense) {
  if (n < 2) {
    throw ArgumentError("code distance n must be >= 2, got " +
                        std::to_string(n));
  }
  const int cap = dense ? limits.dense_max_n : limits.factored_max_n;
  if (n > cap) {
    throw ResourceError(std::string(dense ? "dense" : "factored") +
                        " backend capped at n = " + std::to_string(cap) +
                        ", got n = " + std::to_string(n));
  }
}

}  // namespace

Real logical_overlap2(const LogicalQubit& a, const LogicalQubit& b) {
  return std::norm(std::conj(a.a0) * b.a0 + std::conj(a.a1) * b.a1);
}

std::shared_ptr<const CodewordSupport> codeword_support(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const CodewordSupport>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  auto sup = std::make_shared<CodewordSupport>();
  sup->n = n;
  const Eigen::Index patterns = Eigen::Index{1} << n;
  const Eigen::Index ones = (Eigen::Index{1} << n) - 1;
  sup->index.resize(patterns);
  sup->sign.resize(patterns);
  sup->amp = std::pow(2.0, -0.5 * n);
  for (Eigen::Index pat = 0; pat < patterns; ++pat) {
    Eigen::Index idx = 0;
    for (int b = 0; b < n; ++b) {
      if ((pat >> b) & 1) idx |= ones << (b * n);
    }
    sup->index[pat] = idx;
    // Each all-ones block contributes a sign flip inside codeword 1.
    sup->sign[pat] =
        (std::popcount(static_cast<std::uint64_t>(pat)) % 2 == 0) ? 1.0 : -1.0;
  }
  cache[n] = sup;
  return sup;
}

PureState codeword_rur(int bit, int n, const Limits& limits) {
  if (bit != 0 && bit != 1) {
    throw ArgumentError("codeword_rur: bit must be 0 or 1");
  }
  require_n(n, limits, /*dense=*/true);
  auto sup = codeword_support(n);
  PureState s;
  s.num_qubits = n * n;
  s.amps = VectorXc::Zero(Eigen::Index{1} << (n * n));
  for (size_t pat = 0; pat < sup->index.size(); ++pat) {
    const Real sign = bit ? sup->sign[pat] : 1.0;
    s.amps[sup->index[pat]] = sign * sup->amp;
  }
  return s;
}

PureState encode_dense(const LogicalQubit& q, int n, const Limits& limits) {
  require_logical(q);
  require_n(n, limits, /*dense=*/true);
  auto sup = codeword_support(n);
  PureState s;
  s.num_qubits = n * n;
  s.amps = VectorXc::Zero(Eigen::Index{1} << (n * n));
  for (size_t pat = 0; pat < sup->index.size(); ++pat) {
    s.amps[sup->index[pat]] = (q.a0 + sup->sign[pat] * q.a1) * sup->amp;
  }
  return s;
}

FactoredState encode_factored(const LogicalQubit& q, int n,
                              const Limits& limits) {
  require_logical(q);
  require_n(n, limits, /*dense=*/false);
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Real r = 1.0 / std::sqrt(2.0);
  FactoredState s;
  s.n = n;
  s.coeff = {q.a0, q.a1};
  for (int k = 0; k < 2; ++k) {
    s.blocks[k] = MatrixXc::Zero(dim, n);
    for (int b = 0; b < n; ++b) {
      s.blocks[k](0, b) = r;
      s.blocks[k](dim - 1, b) = (k == 0) ? r : -r;
    }
  }
  return s;
}

State encode(const LogicalQubit& q, const CodeParams& params) {
  if (params.backend == Backend::kDense) {
    return encode_dense(q, params.n, params.limits);
  }
  return encode_factored(q, params.n, params.limits);
}

PureState encode_repetition(const LogicalQubit& q, int m) {
  require_logical(q);
  if (m < 1 || m > 16) {
    throw ArgumentError("encode_repetition: qubit count out of range");
  }
  PureState s;
  s.num_qubits = m;
  s.amps = VectorXc::Zero(Eigen::Index{1} << m);
  s.amps[0] = q.a0;
  s.amps[s.amps.size() - 1] = q.a1;
  return s;
}

Matrix2c basis_rotation() {
  const Real r = 1.0 / std::sqrt(2.0);
  Matrix2c u;
  u << r, r, r, -r;
  return u;
}

PureState encode_staged(const LogicalQubit& q, int n, const Limits& limits) {
  require_n(n, limits, /*dense=*/true);
  // Repetition over n qubits, then rotate each into the +/- basis.
  PureState mid = encode_repetition(q, n);
  const Matrix2c u = basis_rotation();
  for (int qb = 0; qb < n; ++qb) apply_1q(mid, u, qb);
  // Second repetition layer: qubit b of `mid` becomes block b, so basis
  // state j maps onto the block pattern with block b all-`bit_b(j)`.
  const Eigen::Index ones = (Eigen::Index{1} << n) - 1;
  PureState out;
  out.num_qubits = n * n;
  out.amps = VectorXc::Zero(Eigen::Index{1} << (n * n));
  for (Eigen::Index j = 0; j < mid.amps.size(); ++j) {
    Eigen::Index idx = 0;
    for (int b = 0; b < n; ++b) {
      if ((j >> b) & 1) idx |= ones << (b * n);
    }
    out.amps[idx] = mid.amps[j];
  }
  return out;
}

}  // namespace qreduce
