#pragma once

// Online rank-one accumulation game.  An adversary offers a menu of unit
// vectors each round, a player picks one together with a nonnegative scaling,
// and the position matrix A_t grows by s * v v^T.  The interesting adversary
// rotates a Hadamard frame into the eigenbasis of the current position, which
// pins every menu entry's squared eigen-coordinates to exactly 1/n; the
// characteristic polynomial of the position then evolves deterministically as
// p <- p - (s/n) p', no matter which column the player takes.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "specsparse/poly.hpp"
#include "specsparse/rng.hpp"
#include "specsparse/spectral.hpp"

namespace specsparse {

// Everything a player gets to see before committing to a move.
struct GameContext {
  const Eigen::MatrixXd& menu;        // n x m matrix of candidate columns
  const SymmetricSpectrum& spectrum;  // eigendata of the current position
  int round = 0;                      // 1-based
  int total_rounds = 0;
  int dim = 0;
};

struct Pick {
  int index = 0;
  double scaling = 0.0;
};

// Barrier bookkeeping exposed by players that maintain one (currently only
// the two-sided barrier player).  phi_u / phi_l are the potentials of the
// current position at the current barrier locations.
struct BarrierState {
  double l = 0.0;
  double u = 0.0;
  double phi_l = 0.0;
  double phi_u = 0.0;
};

class Player {
 public:
  virtual ~Player() = default;
  virtual std::string name() const = 0;
  virtual Pick choose(const GameContext& ctx) = 0;
  // Called after the move has been applied; "after" is the eigendata of the
  // updated position.  Players with internal invariants verify them here.
  virtual void observe(const GameContext& ctx, const Pick& pick,
                       const SymmetricSpectrum& after) {
    (void)ctx;
    (void)pick;
    (void)after;
  }
  virtual std::optional<BarrierState> barriers() const { return std::nullopt; }
};

// Two-sided barrier player.  With T rounds in dimension n it sets
//   beta = T/n, delta_L = 1, delta_U = (sqrt(beta)+1)/(sqrt(beta)-1),
//   l_0 = -n sqrt(beta), u_0 = n (beta + sqrt(beta)) / (sqrt(beta) - 1),
// and each round picks the menu column maximizing Lower - Upper, scaled by
// s = 2 / (Upper + Lower).  This keeps both potentials nonincreasing and the
// spectrum strictly inside (l, u); after T rounds the eigenvalue ratio is at
// most ((sqrt(beta)+1)/(sqrt(beta)-1))^2.  Requires T > dim.
class BssPlayer : public Player {
 public:
  BssPlayer(int dim, int rounds);

  std::string name() const override { return "bss"; }
  Pick choose(const GameContext& ctx) override;
  void observe(const GameContext& ctx, const Pick& pick,
               const SymmetricSpectrum& after) override;
  std::optional<BarrierState> barriers() const override;

  double beta() const { return beta_; }
  double upper_shift() const { return delta_u_; }

 private:
  int dim_;
  double beta_;
  double delta_u_;
  double l_, u_;
  double phi_l_, phi_u_;  // potentials of the current position
};

// Always takes column 0 with scaling 1.
class UniformPlayer : public Player {
 public:
  std::string name() const override { return "uniform"; }
  Pick choose(const GameContext& ctx) override;
};

// Tries every column against a small scaling grid and keeps the combination
// minimizing the pseudo-condition number of the would-be position (eigenvalues
// below 1e-9 * max(1, lambda_max) are treated as absent, so early rank-deficient
// rounds do not dominate).  Ties break toward the lowest index, then the
// smallest scaling.
class GreedyCondPlayer : public Player {
 public:
  std::string name() const override { return "greedy-cond"; }
  Pick choose(const GameContext& ctx) override;
};

// Uniformly random column, scaling 1.  Deterministic given the seed.
class RandomPlayer : public Player {
 public:
  explicit RandomPlayer(std::uint64_t seed) : rng_(seed) {}
  std::string name() const override { return "random"; }
  Pick choose(const GameContext& ctx) override;

 private:
  Rng rng_;
};

class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::string name() const = 0;
  // Menu for the given round; "spectrum" is the eigendata of the current
  // position.  Columns must form an isotropic set (sum of v v^T equal to the
  // identity); play_game enforces this.
  virtual Eigen::MatrixXd menu(const SymmetricSpectrum& spectrum,
                               int round) = 0;
};

// Sylvester-Hadamard orthogonal matrix with entries +-1/sqrt(n).
// n must be a power of two.
Eigen::MatrixXd hadamard(int n);

// Offers U * H where U is the (sign-fixed, ascending) eigenbasis of the
// current position.  Every column has all squared eigen-coordinates equal to
// 1/n, which is what makes the characteristic polynomial update exact.
class HadamardAdversary : public Adversary {
 public:
  explicit HadamardAdversary(int dim);
  std::string name() const override { return "hadamard"; }
  Eigen::MatrixXd menu(const SymmetricSpectrum& spectrum, int round) override;

 private:
  Eigen::MatrixXd h_;
};

// Offers the same fixed columns every round (the sparsifier uses this with
// one column per graph edge).
class StaticMenuAdversary : public Adversary {
 public:
  explicit StaticMenuAdversary(Eigen::MatrixXd columns);
  std::string name() const override { return "static"; }
  Eigen::MatrixXd menu(const SymmetricSpectrum& spectrum, int round) override;

 private:
  Eigen::MatrixXd columns_;
};

struct RoundRecord {
  int round = 0;
  int index = 0;
  double scaling = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  // Barrier diagnostics; NaN for players without barriers.
  double margin = std::numeric_limits<double>::quiet_NaN();
  double phi_u = std::numeric_limits<double>::quiet_NaN();
  double phi_l = std::numeric_limits<double>::quiet_NaN();
};

struct GameResult {
  int dim = 0;
  int rounds = 0;
  std::string player;
  std::string adversary;
  std::vector<RoundRecord> records;
  Eigen::VectorXd final_eigenvalues;
  // lambda_max / lambda_min of the final position; infinity when the position
  // is singular to working precision (singular flag set).
  double condition = std::numeric_limits<double>::infinity();
  bool singular = true;
  double isotropy_max_error = 0.0;
  double total_scaling = 0.0;            // sum of the played scalings
  double laguerre_S = 0.0;               // total_scaling / dim
  // Exact rational track of prod_t (1 - (s_t/n) D) x^n, kept while dim <= 16.
  std::optional<RealRootedPoly> expected_charpoly;
};

// Runs the full game.  One eigensolve per round: the post-update
// decomposition doubles as the next round's menu basis.  Throws if the
// adversary's menu is not isotropic to 1e-9 (Frobenius), if the player picks
// an out-of-range index or a negative scaling, or if a player invariant
// fails.
GameResult play_game(Adversary& adversary, Player& player, int dim,
                     int rounds);

struct CharpolyCheck {
  double relative_error = 0.0;  // inf-norm coefficient gap over tracked norm
  bool holds = false;
};

// Compares the characteristic polynomial reconstructed from the final
// eigenvalues against the exact rational track.  Requires the result to
// carry one (dim <= 16).
CharpolyCheck charpoly_trace_check(const GameResult& result,
                                   double tol = 1e-8);

}  // namespace specsparse
