#include "specsparse/game.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace specsparse {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

// --- barrier player -----------------------------------------------------

BssPlayer::BssPlayer(int dim, int rounds) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("BssPlayer: dim must be >= 1");
  if (rounds <= dim) {
    throw std::invalid_argument(
        "BssPlayer: needs rounds > dim (beta = rounds/dim must exceed 1)");
  }
  beta_ = static_cast<double>(rounds) / dim;
  const double sq = std::sqrt(beta_);
  delta_u_ = (sq + 1.0) / (sq - 1.0);
  l_ = -dim * sq;
  u_ = dim * (beta_ + sq) / (sq - 1.0);
  // Potentials of the zero position at the initial barriers.
  phi_u_ = dim / u_;
  phi_l_ = 1.0 / sq;
}

Pick BssPlayer::choose(const GameContext& ctx) {
  const Eigen::ArrayXd lam = ctx.spectrum.eigenvalues.array();
  const double u_next = u_ + delta_u_;
  const double l_next = l_ + 1.0;

  // Gaps are guaranteed positive: the maintained potential bounds keep
  // lambda_min - l >= sqrt(beta) > 1 and u - lambda_max > 0.
  const Eigen::ArrayXd ug = u_next - lam;
  const Eigen::ArrayXd lg = lam - l_next;
  const double du = (1.0 / (u_ - lam)).sum() - (1.0 / ug).sum();
  const double dl = (1.0 / lg).sum() - (1.0 / (lam - l_)).sum();
  if (!(du > 0.0) || !(dl > 0.0)) {
    throw std::runtime_error("bss: potential drop is not positive (round " +
                             std::to_string(ctx.round) + ")");
  }

  // Squared eigen-coordinates of every menu column at once.
  const Eigen::MatrixXd coords = ctx.spectrum.vectors.transpose() * ctx.menu;
  int best = -1;
  double best_margin = -std::numeric_limits<double>::infinity();
  double best_upper = 0.0, best_lower = 0.0;
  for (int j = 0; j < coords.cols(); ++j) {
    const Eigen::ArrayXd c2 = coords.col(j).array().square();
    const double upper = (c2 / ug.square()).sum() / du + (c2 / ug).sum();
    const double lower = (c2 / lg.square()).sum() / dl - (c2 / lg).sum();
    const double margin = lower - upper;
    if (margin > best_margin) {
      best_margin = margin;
      best = j;
      best_upper = upper;
      best_lower = lower;
    }
  }
  if (best_margin < 0.0) {
    throw std::runtime_error(
        "bss: no admissible column in round " + std::to_string(ctx.round) +
        " (best Lower - Upper = " + fmt(best_margin) + ", Upper = " +
        fmt(best_upper) + ", Lower = " + fmt(best_lower) + ")");
  }
  return {best, 2.0 / (best_upper + best_lower)};
}

void BssPlayer::observe(const GameContext& ctx, const Pick& pick,
                        const SymmetricSpectrum& after) {
  (void)pick;
  l_ += 1.0;
  u_ += delta_u_;
  const Eigen::ArrayXd lam = after.eigenvalues.array();
  const double lo = lam.minCoeff();
  const double hi = lam.maxCoeff();
  if (!(lo > l_) || !(hi < u_)) {
    throw std::runtime_error(
        "bss: spectrum escaped the barriers in round " +
        std::to_string(ctx.round) + " (l = " + fmt(l_) + ", lambda_min = " +
        fmt(lo) + ", lambda_max = " + fmt(hi) + ", u = " + fmt(u_) + ")");
  }
  const double phi_u = (1.0 / (u_ - lam)).sum();
  const double phi_l = (1.0 / (lam - l_)).sum();
  if (phi_u > phi_u_ + 1e-10 || phi_l > phi_l_ + 1e-10) {
    throw std::runtime_error(
        "bss: potential increased in round " + std::to_string(ctx.round) +
        " (upper " + fmt(phi_u_) + " -> " + fmt(phi_u) + ", lower " +
        fmt(phi_l_) + " -> " + fmt(phi_l) + ")");
  }
  phi_u_ = phi_u;
  phi_l_ = phi_l;
}

std::optional<BarrierState> BssPlayer::barriers() const {
  return BarrierState{l_, u_, phi_l_, phi_u_};
}

// --- naive players --------------------------------------------------------

Pick UniformPlayer::choose(const GameContext&) { return {0, 1.0}; }

namespace {

double pseudo_condition(const Eigen::VectorXd& eigenvalues) {
  const double hi = eigenvalues.maxCoeff();
  if (hi <= 1e-12) return 1.0;  // still the zero matrix
  const double cut = 1e-9 * std::max(1.0, hi);
  double lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues[i] > cut) lo = std::min(lo, eigenvalues[i]);
  }
  return hi / lo;
}

}  // namespace

Pick GreedyCondPlayer::choose(const GameContext& ctx) {
  static constexpr double kGrid[] = {0.5, 1.0, 1.5, 2.0};
  const Eigen::MatrixXd coords = ctx.spectrum.vectors.transpose() * ctx.menu;
  const Eigen::VectorXd& lam = ctx.spectrum.eigenvalues;

  Pick best{0, kGrid[0]};
  double best_cond = std::numeric_limits<double>::infinity();
  for (int j = 0; j < coords.cols(); ++j) {
    for (double s : kGrid) {
      // Work in the current eigenbasis: same spectrum, smaller setup.
      Eigen::MatrixXd m = s * coords.col(j) * coords.col(j).transpose();
      m.diagonal() += lam;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m,
                                                        Eigen::EigenvaluesOnly);
      const double cond = pseudo_condition(es.eigenvalues());
      if (cond < best_cond) {
        best_cond = cond;
        best = {j, s};
      }
    }
  }
  return best;
}

Pick RandomPlayer::choose(const GameContext& ctx) {
  return {rng_.index(static_cast<std::size_t>(ctx.menu.cols())), 1.0};
}

// --- adversaries ------------------------------------------------------------

Eigen::MatrixXd hadamard(int n) {
  if (n < 1 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("hadamard: order must be a power of two, got " +
                                std::to_string(n));
  }
  Eigen::MatrixXd h(1, 1);
  h(0, 0) = 1.0;
  for (int k = 1; k < n; k *= 2) {
    Eigen::MatrixXd next(2 * k, 2 * k);
    next.topLeftCorner(k, k) = h;
    next.topRightCorner(k, k) = h;
    next.bottomLeftCorner(k, k) = h;
    next.bottomRightCorner(k, k) = -h;
    h = std::move(next);
  }
  return h / std::sqrt(static_cast<double>(n));
}

HadamardAdversary::HadamardAdversary(int dim) : h_(hadamard(dim)) {}

Eigen::MatrixXd HadamardAdversary::menu(const SymmetricSpectrum& spectrum,
                                        int) {
  if (spectrum.vectors.cols() != h_.rows()) {
    throw std::invalid_argument("hadamard adversary: dimension mismatch");
  }
  return spectrum.vectors * h_;
}

StaticMenuAdversary::StaticMenuAdversary(Eigen::MatrixXd columns)
    : columns_(std::move(columns)) {
  if (columns_.cols() < 1) {
    throw std::invalid_argument("static adversary: empty menu");
  }
}

Eigen::MatrixXd StaticMenuAdversary::menu(const SymmetricSpectrum&, int) {
  return columns_;
}

// --- driver -----------------------------------------------------------------

GameResult play_game(Adversary& adversary, Player& player, int dim,
                     int rounds) {
  if (dim < 1) throw std::invalid_argument("play_game: dim must be >= 1");
  if (rounds < 0) throw std::invalid_argument("play_game: negative rounds");

  GameResult result;
  result.dim = dim;
  result.rounds = rounds;
  result.player = player.name();
  result.adversary = adversary.name();
  result.records.reserve(rounds);
  if (dim <= 16) {
    result.expected_charpoly = RealRootedPoly::monomial(dim);
  }

  SymmetricMatrix a(dim);
  SymmetricSpectrum spectrum = eig(a, true);
  for (int t = 1; t <= rounds; ++t) {
    const Eigen::MatrixXd menu = adversary.menu(spectrum, t);
    if (menu.rows() != dim || menu.cols() < 1) {
      throw std::runtime_error("play_game: adversary menu has wrong shape");
    }
    const double iso_err =
        (menu * menu.transpose() - Eigen::MatrixXd::Identity(dim, dim))
            .norm();
    result.isotropy_max_error = std::max(result.isotropy_max_error, iso_err);
    if (iso_err > 1e-9) {
      throw std::runtime_error(
          "play_game: menu is not isotropic in round " + std::to_string(t) +
          " (Frobenius error " + fmt(iso_err) + ")");
    }

    const GameContext ctx{menu, spectrum, t, rounds, dim};
    const Pick pick = player.choose(ctx);
    if (pick.index < 0 || pick.index >= menu.cols()) {
      throw std::runtime_error("play_game: player chose index " +
                               std::to_string(pick.index) +
                               " outside the menu");
    }
    if (!(pick.scaling >= 0.0)) {
      throw std::runtime_error("play_game: player produced negative scaling " +
                               fmt(pick.scaling) + " in round " +
                               std::to_string(t));
    }

    a.add_scaled_outer(pick.scaling, menu.col(pick.index));
    SymmetricSpectrum after = eig(a, true);
    if (result.expected_charpoly) {
      result.expected_charpoly =
          result.expected_charpoly->one_minus_alpha_derivative(pick.scaling,
                                                               dim);
    }
    player.observe(ctx, pick, after);

    RoundRecord rec;
    rec.round = t;
    rec.index = pick.index;
    rec.scaling = pick.scaling;
    rec.lambda_min = after.eigenvalues.minCoeff();
    rec.lambda_max = after.eigenvalues.maxCoeff();
    if (const auto b = player.barriers()) {
      rec.margin = std::min(rec.lambda_min - b->l, b->u - rec.lambda_max);
      rec.phi_u = b->phi_u;
      rec.phi_l = b->phi_l;
    }
    result.records.push_back(rec);
    result.total_scaling += pick.scaling;
    spectrum = std::move(after);
  }

  result.final_eigenvalues = spectrum.eigenvalues;
  result.laguerre_S = result.total_scaling / dim;
  const double lo = spectrum.eigenvalues.minCoeff();
  const double hi = spectrum.eigenvalues.maxCoeff();
  result.singular = lo <= 1e-12 * std::max(1.0, hi);
  result.condition = result.singular
                         ? std::numeric_limits<double>::infinity()
                         : hi / lo;
  return result;
}

CharpolyCheck charpoly_trace_check(const GameResult& result, double tol) {
  if (!result.expected_charpoly) {
    throw std::invalid_argument(
        "charpoly_trace_check: result carries no polynomial track (dim > 16?)");
  }
  std::vector<double> roots(result.final_eigenvalues.begin(),
                            result.final_eigenvalues.end());
  const std::vector<double> realized =
      RealRootedPoly::from_roots(roots).coefficients();
  const std::vector<double> tracked = result.expected_charpoly->coefficients();
  if (realized.size() != tracked.size()) {
    throw std::runtime_error("charpoly_trace_check: degree mismatch");
  }
  double scale = 1.0;
  for (double c : tracked) scale = std::max(scale, std::abs(c));
  double gap = 0.0;
  for (std::size_t i = 0; i < tracked.size(); ++i) {
    gap = std::max(gap, std::abs(realized[i] - tracked[i]));
  }
  CharpolyCheck check;
  check.relative_error = gap / scale;
  check.holds = check.relative_error <= tol;
  return check;
}

}  // namespace specsparse
