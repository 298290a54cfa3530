#include "core/channel_plan.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace slicer {

namespace {

// Fractions are exact shares of a channel; allow only roundoff headroom.
constexpr double kFillSlack = 1e-9;

// First-fit over fractions in descending order; returns the bin index of
// every fraction (by original position).
std::vector<size_t> ffd_assign(const std::vector<double>& fractions,
                               size_t* bin_count) {
  std::vector<size_t> order(fractions.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t lhs, size_t rhs) {
    return fractions[lhs] > fractions[rhs];
  });
  std::vector<double> loads;
  std::vector<size_t> bin_of(fractions.size(), 0);
  for (size_t i : order) {
    size_t target = loads.size();
    for (size_t b = 0; b < loads.size(); ++b) {
      if (loads[b] + fractions[i] <= 1.0 + kFillSlack) {
        target = b;
        break;
      }
    }
    if (target == loads.size()) loads.push_back(0.0);
    loads[target] += fractions[i];
    bin_of[i] = target;
  }
  *bin_count = loads.size();
  return bin_of;
}

}  // namespace

double Channel::load() const {
  double sum = 0.0;
  for (const auto& m : members) sum += m.fraction;
  return sum;
}

double FapChannels::bandwidth_hz() const {
  double sum = 0.0;
  for (const auto& c : channels) sum += c.bandwidth_hz;
  return sum;
}

std::vector<ChannelDemand> chunk_demands(
    const std::vector<std::pair<std::string, double>>& channel_equivalents) {
  std::vector<ChannelDemand> chunks;
  for (const auto& [subarea_id, equiv] : channel_equivalents) {
    if (!(equiv > 0.0)) {
      raise_invalid("chunk_demands: channel-equivalent must be positive");
    }
    double left = equiv;
    while (left > 1.0 + kFillSlack) {
      chunks.push_back({subarea_id, 1.0});
      left -= 1.0;
    }
    chunks.push_back({subarea_id, std::min(left, 1.0)});
  }
  return chunks;
}

std::vector<Channel> pack_channels(std::vector<ChannelDemand> demands,
                                   int max_channels, double bandwidth_hz) {
  for (const auto& d : demands) {
    if (!(d.fraction > 0.0) || d.fraction > 1.0 + kFillSlack) {
      raise_invalid("pack_channels: fractions must lie in (0, 1]");
    }
  }
  std::vector<double> fractions;
  fractions.reserve(demands.size());
  for (const auto& d : demands) fractions.push_back(d.fraction);
  size_t bin_count = 0;
  const auto bin_of = ffd_assign(fractions, &bin_count);
  if (max_channels >= 0 && bin_count > static_cast<size_t>(max_channels)) {
    raise(ErrorKind::infeasible,
          "pack_channels: demands need " + std::to_string(bin_count) +
              " channels, budget is " + std::to_string(max_channels));
  }
  std::vector<Channel> channels(bin_count, Channel{bandwidth_hz, {}});
  // Fill channels in descending-fraction order to keep member lists in the
  // order FFD placed them.
  std::vector<size_t> order(demands.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t lhs, size_t rhs) {
    return demands[lhs].fraction > demands[rhs].fraction;
  });
  for (size_t i : order) {
    channels[bin_of[i]].members.push_back(
        {demands[i].subarea_id, demands[i].fraction});
  }
  return channels;
}

int ffd_channel_count(const std::vector<double>& channel_equivalents) {
  std::vector<double> fractions;
  for (double equiv : channel_equivalents) {
    if (!(equiv > 0.0)) {
      raise_invalid("ffd_channel_count: channel-equivalent must be positive");
    }
    double left = equiv;
    while (left > 1.0 + kFillSlack) {
      fractions.push_back(1.0);
      left -= 1.0;
    }
    fractions.push_back(std::min(left, 1.0));
  }
  size_t bin_count = 0;
  ffd_assign(fractions, &bin_count);
  return static_cast<int>(bin_count);
}

std::vector<Channel> naive_plan(const std::vector<ChannelDemand>& demands,
                                double bandwidth_hz) {
  std::vector<Channel> channels;
  channels.reserve(demands.size());
  for (const auto& d : demands) {
    if (!(d.fraction > 0.0) || d.fraction > 1.0 + kFillSlack) {
      raise_invalid("naive_plan: fractions must lie in (0, 1]");
    }
    channels.push_back({bandwidth_hz, {{d.subarea_id, d.fraction}}});
  }
  return channels;
}

double total_bandwidth_hz(const std::vector<Channel>& channels) {
  double sum = 0.0;
  for (const auto& c : channels) sum += c.bandwidth_hz;
  return sum;
}

}  // namespace slicer
