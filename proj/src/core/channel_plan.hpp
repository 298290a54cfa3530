#pragma once

#include <string>
#include <vector>

namespace slicer {

// Share of one physical channel a subarea needs; demands above a full
// channel are split into unit chunks before packing.
struct ChannelDemand {
  std::string subarea_id;
  double fraction = 0.0;  // (0, 1]
};

struct ChannelMember {
  std::string subarea_id;
  double fraction = 0.0;
};

struct Channel {
  double bandwidth_hz = 0.0;
  std::vector<ChannelMember> members;
  double load() const;  // sum of member fractions
};

struct FapChannels {
  std::string fap_id;
  std::vector<Channel> channels;
  double bandwidth_hz() const;
};

// Split raw channel-equivalents into (0, 1] chunks: 2.3 -> {1, 1, 0.3}.
std::vector<ChannelDemand> chunk_demands(
    const std::vector<std::pair<std::string, double>>& channel_equivalents);

// First-fit decreasing: sort by fraction descending, drop each chunk into
// the first channel with room, open a new channel otherwise. Throws a
// capacity error when more than `max_channels` channels are needed.
std::vector<Channel> pack_channels(std::vector<ChannelDemand> demands,
                                   int max_channels, double bandwidth_hz);

// One channel per chunk; the savings baseline.
std::vector<Channel> naive_plan(const std::vector<ChannelDemand>& demands,
                                double bandwidth_hz);

// Channels FFD needs for raw channel-equivalents (chunked first). Shares
// the packing core with pack_channels, so the two can never disagree.
int ffd_channel_count(const std::vector<double>& channel_equivalents);

double total_bandwidth_hz(const std::vector<Channel>& channels);

}  // namespace slicer
