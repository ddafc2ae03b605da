#include "vcoop/netdelay.hpp"

namespace vcoop {

DelayEstimate local_delay(double length_gi, double gips) {
  DelayEstimate d;
  d.compute_s = gips > 0.0 ? length_gi / gips : kUnreachable;
  return d;
}

DelayEstimate v2v_delay(double length_gi, double upload_kb, double download_kb,
                        double pooled_gips, double v2v_rate_mbps) {
  if (!(pooled_gips > 0.0)) throw DegeneratePool("coalition has no pooled capacity");
  DelayEstimate d;
  d.upload_s = transfer_time(upload_kb, v2v_rate_mbps);
  d.compute_s = length_gi / pooled_gips;
  d.comm_s = d.upload_s + transfer_time(download_kb, v2v_rate_mbps);
  return d;
}

DelayEstimate edge_delay(double length_gi, double upload_kb, double download_kb,
                         double edge_gips, double v2i_rate_mbps) {
  DelayEstimate d;
  d.upload_s = transfer_time(upload_kb, v2i_rate_mbps);
  d.compute_s = length_gi / edge_gips;
  d.comm_s = d.upload_s + transfer_time(download_kb, v2i_rate_mbps);
  return d;
}

DelayEstimate cloud_delay(double length_gi, double upload_kb, double download_kb,
                          double cloud_gips, double v2i_rate_mbps, double wan_rate_mbps) {
  DelayEstimate d;
  d.upload_s = transfer_time(upload_kb, v2i_rate_mbps) + transfer_time(upload_kb, wan_rate_mbps);
  d.compute_s = length_gi / cloud_gips;
  d.comm_s = d.upload_s + transfer_time(download_kb, v2i_rate_mbps) +
             transfer_time(download_kb, wan_rate_mbps);
  return d;
}

}  // namespace vcoop
