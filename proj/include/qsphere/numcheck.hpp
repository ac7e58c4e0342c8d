#pragma once

#include <Eigen/SparseCore>
#include <string>
#include <unordered_map>
#include <vector>

#include "qsphere/bundles.hpp"

namespace qsphere {

using SparseOp = Eigen::SparseMatrix<double>;

// pi restricted to span{|k1,k2> : k1, k2 <= K}, basis index k1 (K+1) + k2.
// Shifts leaving the window are dropped.
class TruncatedRep {
 public:
  TruncatedRep(int K, double q0);

  int K() const { return K_; }
  double q0() const { return q0_; }
  int dim() const { return (K_ + 1) * (K_ + 1); }
  int index(int k1, int k2) const { return k1 * (K_ + 1) + k2; }

  const SparseOp& generator(Letter g) const { return generators_.at(g); }
  // Products of truncated generator matrices, one per word, summed with
  // coefficients evaluated at q0.
  SparseOp image(const NCPoly& p);

 private:
  const SparseOp& word_image(const Word& w);

  int K_;
  double q0_;
  std::vector<SparseOp> generators_;
  std::unordered_map<Word, SparseOp, WordHash> words_;
};

// Matrix of one S7q generator; DomainError unless 0 < q0 < 1 and K >= 0.
SparseOp build_truncated(Letter g, int K, double q0);

// Tr(pi_K(t) - epsilon(t)) for a trace polynomial t.
double numeric_trace_ch1(const NCPoly& trace, int K, double q0);
double numeric_ch1(const Projection& p, int K, double q0);

// max |(M^2 - M)_{ij}| over input states with k1, k2 <= K - 2L, where M is the
// block matrix of truncated images of the entries of P and L their longest word.
// Those columns never see the truncation edge. DomainError if none remain.
double numeric_idempotence(const Projection& p, int K, double q0);

struct ConvergenceRow {
  std::string check;
  int K = 0;
  double q0 = 0;
  double value = 0;
  double abs_error = 0;
};

std::vector<ConvergenceRow> convergence_table(const std::string& check, const NCPoly& trace, double exact,
                                              const std::vector<int>& Ks, const std::vector<double>& q0s);
std::string to_csv(const std::vector<ConvergenceRow>& rows);

}  // namespace qsphere
