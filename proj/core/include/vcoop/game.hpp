#ifndef VCOOP_GAME_HPP
#define VCOOP_GAME_HPP

#include <span>
#include <stdexcept>
#include <vector>

#include "vcoop/config.hpp"

// Game-theoretic kernel of partial idle-resource sharing: risk and reward
// terms behind a vehicle's cooperation utility, asymmetric Nash bargaining
// over pooled CPU, and the willingness learning rule. Everything here is a
// pure function.

namespace vcoop::game {

enum class Action { kGive = 0, kGet = 1 };

/// Willingness to give or get resources. Stays on the probability simplex.
struct Willingness {
  double give = 0.5;
  double get = 0.5;

  bool operator==(const Willingness&) const = default;
};

/// Reward J observed for each own action in one cooperation round.
struct ActionRewards {
  double give = 0.0;
  double get = 0.0;

  bool operator==(const ActionRewards&) const = default;
};

/// Probability of being short of CPU for one's own tasks (risky) or not.
struct RiskVector {
  double p_risky = 0.0;
  double p_safe = 1.0;
};

struct ActionProbability {
  double p_give = 0.0;
  double p_get = 0.0;

  static constexpr ActionProbability pure(Action a) {
    return a == Action::kGive ? ActionProbability{1.0, 0.0} : ActionProbability{0.0, 1.0};
  }
};

struct BargainOutcome {
  std::vector<double> allocation;      ///< total resource per party after the bargain
  std::vector<double> surplus_shares;  ///< lambda_i times the shared surplus
  std::vector<double> lambda;
};

class DegenerateCapacity : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InfeasibleBargain : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// p_risky = busy/total + (give - get), clamped to [0, 1].
/// Throws DegenerateCapacity when total_gips <= 0.
RiskVector risk_vector(double busy_gips, double total_gips, const Willingness& beta);

/// Bilinear reward own * ma * other^T.
double action_reward(const ActionProbability& own, const Matrix2& ma,
                     const ActionProbability& other);

/// Expected state weight for the chosen action's row of mtheta, times the
/// reward: (mtheta[a][0] * p_risky + mtheta[a][1] * p_safe) * reward.
double utility(const RiskVector& risk, const Matrix2& mtheta, double reward, Action own_action);

/// Bargaining power of party i against j from their get-willingness.
/// Falls back to 0.5 when both are zero.
double bargaining_power(double beta_get_i, double beta_get_j);

/// Asymmetric Nash bargaining over a pool `phi`: each party keeps its busy
/// load and receives lambda_i of the shared surplus phi - sum(busy). This
/// closed form is the maximizer of prod (C_i - B_i)^lambda_i subject to
/// sum C_i = phi and C_i >= B_i.
///
/// Throws InfeasibleBargain when phi < sum(busy), std::invalid_argument on
/// mismatched sizes or lambdas that are negative or do not sum to one.
BargainOutcome anbs_allocate(std::span<const double> busy, double phi,
                             std::span<const double> lambda);

/// One step of the willingness rule. Reward differences against the previous
/// round drive the step; a non-positive or non-finite denominator means no
/// learning signal. The result is clamped to [0, 1] and renormalized.
Willingness update_willingness(const Willingness& previous, const ActionRewards& reward_now,
                               const ActionRewards& reward_prev, double alpha);

/// Per-action rewards for a party whose counterpart played `counterpart`.
ActionRewards counterfactual_rewards(const Matrix2& ma, Action counterpart);

}  // namespace vcoop::game

#endif  // VCOOP_GAME_HPP
