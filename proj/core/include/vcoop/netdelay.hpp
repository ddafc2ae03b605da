#ifndef VCOOP_NETDELAY_HPP
#define VCOOP_NETDELAY_HPP

#include <limits>
#include <stdexcept>

namespace vcoop {

// Unit conventions used throughout: 1 KB = 1000 bytes, 1 Mbps = 1e6 bit/s,
// lengths in giga-instructions and capacities in GIPS.
inline constexpr double kBitsPerKilobyte = 8000.0;
inline constexpr double kBitsPerMegabit = 1e6;
inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

struct DelayEstimate {
  double compute_s = 0.0;
  double comm_s = 0.0;
  double upload_s = 0.0;  ///< part of comm_s spent before compute starts

  double total_s() const { return compute_s + comm_s; }
  /// Offset from placement to the end of the compute phase.
  double compute_end_s() const { return upload_s + compute_s; }
};

/// Seconds to move `kilobytes` over a link of `rate_mbps`.
inline double transfer_time(double kilobytes, double rate_mbps) {
  return kilobytes * kBitsPerKilobyte / (rate_mbps * kBitsPerMegabit);
}

/// On-board execution. A zero rate yields an unreachable (infinite) delay.
DelayEstimate local_delay(double length_gi, double gips);

class DegeneratePool : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Coalition execution: one upload and one download over the V2V link, with
/// compute at the pooled rate. Throws DegeneratePool when pooled_gips <= 0.
DelayEstimate v2v_delay(double length_gi, double upload_kb, double download_kb,
                        double pooled_gips, double v2v_rate_mbps);

DelayEstimate edge_delay(double length_gi, double upload_kb, double download_kb,
                         double edge_gips, double v2i_rate_mbps);

/// Remote cloud: the V2I hop and the WAN hop are traversed in series each way.
DelayEstimate cloud_delay(double length_gi, double upload_kb, double download_kb,
                          double cloud_gips, double v2i_rate_mbps, double wan_rate_mbps);

}  // namespace vcoop

#endif  // VCOOP_NETDELAY_HPP
