#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace slicer {

// Free-space propagation constant.
inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

struct RadioConfig {
  double tx_power_dbm = 10.0;
  double tx_gain_dbi = 0.0;
  double rx_gain_dbi = 0.0;
  double carrier_freq_hz = 5.25e9;
  double noise_power_dbm = -94.0;  // constant per channel of bandwidth_hz
  double channel_bandwidth_hz = 20e6;
  int max_channels_total = 8;  // packing cap per FAP, 8 x 20 MHz = 160 MHz
};

struct McsEntry {
  int index = 0;
  double phy_rate_bps = 0.0;
  // target BER -> minimum SNR (dB) required to run this MCS at that BER
  std::map<double, double> min_snr_by_ber;
};

using McsTable = std::vector<McsEntry>;

// Continuous stand-in for the step-wise MCS curve: a clamped straight line
// fitted to (SNR threshold, PHY rate) pairs of one BER target.
struct CapacityModel {
  double target_ber = 0.0;
  double slope_bps_per_db = 0.0;
  double intercept_bps = 0.0;
  double snr_cutoff_db = 0.0;    // below the lowest MCS threshold: no link
  double rate_ceiling_bps = 0.0; // top MCS rate
  double max_residual_bps = 0.0; // worst |fit - table| over the fit points
};

// Free-space path loss, dB. Throws on non-positive distance or frequency.
double path_loss_db(double distance_m, double freq_hz);

// Link budget: tx power + antenna gains - path loss.
double received_power_dbm(const RadioConfig& cfg, double distance_m);

// Received power relative to the per-channel noise floor.
double snr_db(const RadioConfig& cfg, double distance_m);

// Highest-index entry usable at `snr` for `ber`; nullopt when below all
// thresholds. The boundary is inclusive: snr == threshold qualifies.
std::optional<McsEntry> mcs_for_snr(const McsTable& table, double snr,
                                    double ber);

// Ordinary least squares of phy_rate against the per-entry SNR threshold at
// `ber`, clamped to [0, top rate] and cut off below the lowest threshold.
CapacityModel fit_capacity_model(const McsTable& table, double ber);

// Clamped line evaluation; 0 below the cutoff.
double capacity_bps(const CapacityModel& model, double snr);

// Capacity of a channel spanning `width_multiple` base channels. Noise grows
// with bandwidth, so the SNR measured at base width drops by
// 10*log10(width_multiple) before the per-base-channel model applies.
double capacity_for_width_bps(const CapacityModel& model,
                              double snr_at_base_width, int width_multiple);

// IEEE 802.11ac, 20 MHz, 800 ns GI, single spatial stream (MCS 0-8).
// Thresholds for each requested BER are derived from the uncoded AWGN
// symbol-error approximation of the entry's modulation, solved via the
// Gaussian tail function, minus a per-coding-rate gain offset.
McsTable default_mcs_table(const std::vector<double>& bers = {1e-5, 1e-10});

// Threshold lookup helper; throws a configuration error when `ber` is not a
// key of the entry (tables are data files, slices must match them).
double threshold_at(const McsEntry& entry, double ber);

// Invariant check for loaded tables: rates strictly increasing with index,
// thresholds strictly increasing with index per BER, and stricter BERs
// demand strictly more SNR. Returns human-readable violations.
std::vector<std::string> validate_mcs_table(const McsTable& table);

// Inverse Gaussian tail: x such that Q(x) = p, for p in (0, 0.5).
double q_function_inverse(double p);

}  // namespace slicer
