#include "core/radio.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "core/error.hpp"

namespace slicer {

namespace {

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

struct McsDefinition {
  int index;
  double rate_mbps;
  int modulation_order;    // constellation size M
  double coding_gain_db;   // fixed offset for the entry's coding rate
};

// 802.11ac VHT, 20 MHz, 800 ns GI, 1 spatial stream.
// Coding gains: 1/2 -> 5.0 dB, 2/3 -> 4.0 dB, 3/4 -> 3.5 dB, 5/6 -> 3.0 dB.
constexpr McsDefinition kVht20Lgi1ss[] = {
    {0, 6.5, 2, 5.0},     // BPSK 1/2
    {1, 13.0, 4, 5.0},    // QPSK 1/2
    {2, 19.5, 4, 3.5},    // QPSK 3/4
    {3, 26.0, 16, 5.0},   // 16-QAM 1/2
    {4, 39.0, 16, 3.5},   // 16-QAM 3/4
    {5, 52.0, 64, 4.0},   // 64-QAM 2/3
    {6, 58.5, 64, 3.5},   // 64-QAM 3/4
    {7, 65.0, 64, 3.0},   // 64-QAM 5/6
    {8, 78.0, 256, 3.5},  // 256-QAM 3/4
};

// Uncoded AWGN SNR (linear, per symbol) at which the Gray-coded bit error
// rate of an M-ary constellation reaches `ber`.
double uncoded_snr_for_ber(int modulation_order, double ber) {
  if (modulation_order == 2) {
    const double x = q_function_inverse(ber);
    return x * x / 2.0;
  }
  const double m = static_cast<double>(modulation_order);
  const double bits = std::log2(m);
  const double scale = 4.0 * (1.0 - 1.0 / std::sqrt(m));
  const double p = ber * bits / scale;
  const double x = q_function_inverse(p);
  return (m - 1.0) / 3.0 * x * x;
}

}  // namespace

double q_function_inverse(double p) {
  if (!(p > 0.0) || !(p >= 1e-300) || p >= 0.5) {
    raise_invalid("q_function_inverse: p must lie in (0, 0.5)");
  }
  double lo = 0.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (q_function(mid) > p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double path_loss_db(double distance_m, double freq_hz) {
  if (!(distance_m > 0.0)) {
    raise_invalid("path_loss: distance must be positive");
  }
  if (!(freq_hz > 0.0)) {
    raise_invalid("path_loss: frequency must be positive");
  }
  return 20.0 * std::log10(distance_m) + 20.0 * std::log10(freq_hz) +
         20.0 * std::log10(4.0 * std::numbers::pi / kSpeedOfLight);
}

double received_power_dbm(const RadioConfig& cfg, double distance_m) {
  return cfg.tx_power_dbm + cfg.tx_gain_dbi + cfg.rx_gain_dbi -
         path_loss_db(distance_m, cfg.carrier_freq_hz);
}

double snr_db(const RadioConfig& cfg, double distance_m) {
  return received_power_dbm(cfg, distance_m) - cfg.noise_power_dbm;
}

double threshold_at(const McsEntry& entry, double ber) {
  // BER keys survive a JSON round trip bit-exactly, but accept a hair of
  // slack in case a hand-written table prints fewer digits.
  auto it = entry.min_snr_by_ber.find(ber);
  if (it != entry.min_snr_by_ber.end()) {
    return it->second;
  }
  for (const auto& [key, thr] : entry.min_snr_by_ber) {
    if (std::abs(key - ber) <= 1e-12 * std::max(key, ber)) {
      return thr;
    }
  }
  std::ostringstream msg;
  msg << "MCS table has no threshold column for BER " << ber;
  raise(ErrorKind::invalid_argument, msg.str());
}

std::optional<McsEntry> mcs_for_snr(const McsTable& table, double snr,
                                    double ber) {
  std::optional<McsEntry> best;
  for (const auto& entry : table) {
    if (snr >= threshold_at(entry, ber) &&
        (!best || entry.index > best->index)) {
      best = entry;
    }
  }
  return best;
}

CapacityModel fit_capacity_model(const McsTable& table, double ber) {
  if (table.size() < 2) {
    raise_invalid("fit_capacity_model: need at least two MCS entries");
  }
  const double n = static_cast<double>(table.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& e : table) {
    sx += threshold_at(e, ber);
    sy += e.phy_rate_bps;
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& e : table) {
    const double dx = threshold_at(e, ber) - mx;
    sxx += dx * dx;
    sxy += dx * (e.phy_rate_bps - my);
  }
  if (sxx <= 0.0) {
    raise_invalid("fit_capacity_model: degenerate fit, all thresholds equal");
  }

  CapacityModel model;
  model.target_ber = ber;
  model.slope_bps_per_db = sxy / sxx;
  model.intercept_bps = my - model.slope_bps_per_db * mx;
  model.snr_cutoff_db = threshold_at(table.front(), ber);
  model.rate_ceiling_bps = 0.0;
  for (const auto& e : table) {
    model.snr_cutoff_db = std::min(model.snr_cutoff_db, threshold_at(e, ber));
    model.rate_ceiling_bps = std::max(model.rate_ceiling_bps, e.phy_rate_bps);
  }
  for (const auto& e : table) {
    const double fitted = model.slope_bps_per_db * threshold_at(e, ber) +
                          model.intercept_bps;
    model.max_residual_bps =
        std::max(model.max_residual_bps, std::abs(fitted - e.phy_rate_bps));
  }
  return model;
}

double capacity_bps(const CapacityModel& model, double snr) {
  if (snr < model.snr_cutoff_db) {
    return 0.0;
  }
  const double line = model.slope_bps_per_db * snr + model.intercept_bps;
  return std::clamp(line, 0.0, model.rate_ceiling_bps);
}

double capacity_for_width_bps(const CapacityModel& model,
                              double snr_at_base_width, int width_multiple) {
  if (width_multiple < 1) {
    raise_invalid("capacity_for_width: width multiple must be >= 1");
  }
  const double widened_snr =
      snr_at_base_width - 10.0 * std::log10(static_cast<double>(width_multiple));
  return width_multiple * capacity_bps(model, widened_snr);
}

McsTable default_mcs_table(const std::vector<double>& bers) {
  if (bers.empty()) {
    raise_invalid("default_mcs_table: need at least one BER target");
  }
  McsTable table;
  for (const auto& def : kVht20Lgi1ss) {
    McsEntry entry;
    entry.index = def.index;
    entry.phy_rate_bps = def.rate_mbps * 1e6;
    for (double ber : bers) {
      if (!(ber > 0.0 && ber < 0.1)) {
        raise_invalid("default_mcs_table: BER target out of range (0, 0.1)");
      }
      const double gamma = uncoded_snr_for_ber(def.modulation_order, ber);
      entry.min_snr_by_ber[ber] =
          10.0 * std::log10(gamma) - def.coding_gain_db;
    }
    table.push_back(std::move(entry));
  }
  return table;
}

std::vector<std::string> validate_mcs_table(const McsTable& table) {
  std::vector<std::string> violations;
  auto complain = [&violations](const std::string& what) {
    violations.push_back(what);
  };
  for (size_t i = 1; i < table.size(); ++i) {
    if (table[i].index <= table[i - 1].index) {
      complain("MCS indexes must be strictly increasing");
    }
    if (table[i].phy_rate_bps <= table[i - 1].phy_rate_bps) {
      complain("PHY rates must be strictly increasing with MCS index");
    }
    for (const auto& [ber, thr] : table[i].min_snr_by_ber) {
      const auto prev = table[i - 1].min_snr_by_ber.find(ber);
      if (prev == table[i - 1].min_snr_by_ber.end()) {
        complain("all entries must carry the same BER columns");
      } else if (thr <= prev->second) {
        complain("SNR thresholds must be strictly increasing with MCS index");
      }
    }
  }
  for (const auto& e : table) {
    // std::map orders keys ascending, so a stricter (smaller) BER comes
    // first and must demand strictly more SNR than any laxer one.
    const auto& m = e.min_snr_by_ber;
    for (auto it = m.begin(); it != m.end(); ++it) {
      for (auto jt = std::next(it); jt != m.end(); ++jt) {
        if (it->second <= jt->second) {
          complain("stricter BER targets must demand strictly more SNR");
        }
      }
    }
  }
  return violations;
}

}  // namespace slicer
