#include "vcoop/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vcoop::game {
namespace {

constexpr double kLambdaSumTolerance = 1e-9;
constexpr double kFeasibilitySlack = 1e-12;

}  // namespace

RiskVector risk_vector(double busy_gips, double total_gips, const Willingness& beta) {
  if (!(total_gips > 0.0)) throw DegenerateCapacity("risk of a vehicle with no capacity");
  const double raw = busy_gips / total_gips + (beta.give - beta.get);
  const double p = std::clamp(raw, 0.0, 1.0);
  return RiskVector{p, 1.0 - p};
}

double action_reward(const ActionProbability& own, const Matrix2& ma,
                     const ActionProbability& other) {
  const double own_v[2] = {own.p_give, own.p_get};
  const double other_v[2] = {other.p_give, other.p_get};
  double j = 0.0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) j += own_v[r] * ma[r][c] * other_v[c];
  }
  return j;
}

double utility(const RiskVector& risk, const Matrix2& mtheta, double reward, Action own_action) {
  const auto& row = mtheta[static_cast<int>(own_action)];
  return (row[0] * risk.p_risky + row[1] * risk.p_safe) * reward;
}

double bargaining_power(double beta_get_i, double beta_get_j) {
  const double sum = beta_get_i + beta_get_j;
  if (!(sum > 0.0)) return 0.5;
  return beta_get_i / sum;
}

BargainOutcome anbs_allocate(std::span<const double> busy, double phi,
                             std::span<const double> lambda) {
  if (busy.size() != lambda.size() || busy.empty()) {
    throw std::invalid_argument("busy and lambda must be non-empty and of equal size");
  }
  double lambda_sum = 0.0;
  for (double l : lambda) {
    if (!(l >= 0.0)) throw std::invalid_argument("bargaining powers must be >= 0");
    lambda_sum += l;
  }
  if (std::abs(lambda_sum - 1.0) > kLambdaSumTolerance) {
    throw std::invalid_argument("bargaining powers must sum to 1");
  }
  const double busy_sum = std::accumulate(busy.begin(), busy.end(), 0.0);
  double surplus = phi - busy_sum;
  if (surplus < -kFeasibilitySlack * std::max(1.0, std::abs(phi))) {
    throw InfeasibleBargain("pool is smaller than the parties' committed load");
  }
  surplus = std::max(surplus, 0.0);

  BargainOutcome out;
  out.allocation.resize(busy.size());
  out.surplus_shares.resize(busy.size());
  out.lambda.assign(lambda.begin(), lambda.end());
  double assigned = 0.0;
  for (std::size_t i = 0; i < busy.size(); ++i) {
    out.surplus_shares[i] = lambda[i] * surplus;
    out.allocation[i] = busy[i] + out.surplus_shares[i];
    assigned += out.allocation[i];
  }
  // Push the rounding residue onto the party with the largest share so the
  // pool is used exactly.
  const auto largest = static_cast<std::size_t>(
      std::max_element(out.surplus_shares.begin(), out.surplus_shares.end()) -
      out.surplus_shares.begin());
  const double residue = (busy_sum + surplus) - assigned;
  out.allocation[largest] += residue;
  out.surplus_shares[largest] += residue;
  return out;
}

Willingness update_willingness(const Willingness& previous, const ActionRewards& reward_now,
                               const ActionRewards& reward_prev, double alpha) {
  const double d_give = reward_now.give - reward_prev.give;
  const double d_get = reward_now.get - reward_prev.get;
  const double denom = d_give + d_get;

  double step_give = 0.0;
  double step_get = 0.0;
  if (std::isfinite(d_give) && std::isfinite(d_get) && denom > 0.0) {
    step_give = d_give / denom;
    step_get = d_get / denom;
  }
  const double give = std::clamp(previous.give + alpha * step_give, 0.0, 1.0);
  const double get = std::clamp(previous.get + alpha * step_get, 0.0, 1.0);
  const double sum = give + get;
  if (!(sum > 0.0)) return Willingness{0.5, 0.5};
  return Willingness{give / sum, get / sum};
}

ActionRewards counterfactual_rewards(const Matrix2& ma, Action counterpart) {
  const ActionProbability other = ActionProbability::pure(counterpart);
  return ActionRewards{action_reward(ActionProbability::pure(Action::kGive), ma, other),
                       action_reward(ActionProbability::pure(Action::kGet), ma, other)};
}

}  // namespace vcoop::game
