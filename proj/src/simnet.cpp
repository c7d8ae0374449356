#include "mtet/simnet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace mtet {

int SimModel::effective_bandwidth(int n) const {
  if (mode == SimMode::kLocal) return 0;
  if (bandwidth_bits > 0) return bandwidth_bits;
  int logn = 1;
  while ((1 << logn) < n) ++logn;
  // byte-granularity floor: payloads are byte strings, so never go below one byte
  return std::max(8, 4 * logn);
}

std::uint64_t derive_seed(std::uint64_t global_seed, std::uint64_t entity) {
  // splitmix64 over the combined value; decorrelates per-entity streams
  std::uint64_t z = global_seed + 0x9e3779b97f4a7c15ULL * (entity + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RoundTranscript run(const Graph& g, const ProgramFactory& make_node, const SimModel& model,
                    std::uint64_t seed, int max_rounds) {
  const int n = g.node_count();
  const int bandwidth = model.effective_bandwidth(n);

  std::vector<std::unique_ptr<NodeBehavior>> behavior(n);
  std::vector<std::vector<NodeId>> nbrs(n);
  std::vector<std::map<NodeId, int>> port_of(n);
  for (NodeId v = 0; v < n; ++v) {
    nbrs[v] = g.neighbors(v);
    std::sort(nbrs[v].begin(), nbrs[v].end());
    for (std::size_t p = 0; p < nbrs[v].size(); ++p) port_of[v][nbrs[v][p]] = (int)p;
    behavior[v] = make_node(v);
    NodeContext ctx;
    ctx.id = v;
    ctx.n = n;
    ctx.neighbors = nbrs[v];
    ctx.rng_seed = derive_seed(seed, (std::uint64_t)v);
    behavior[v]->init(ctx);
  }

  RoundTranscript tr;
  std::vector<char> halted(n, 0);
  // pending[v][p] = messages arriving at v over port p next tick
  std::vector<std::vector<std::vector<Payload>>> pending(n);
  for (NodeId v = 0; v < n; ++v) pending[v].resize(nbrs[v].size());

  for (int tick = 1;; ++tick) {
    if (tick > max_rounds) {
      tr.timed_out = true;
      for (NodeId v = 0; v < n; ++v) {
        tr.outputs.push_back(behavior[v]->output());
        tr.state_hashes.push_back(std::hash<std::string>{}(behavior[v]->snapshot()));
      }
      throw SimTimeout("simulation exceeded " + std::to_string(max_rounds) + " rounds", tr);
    }
    bool all_halted = true;
    bool any_pending = false;
    for (NodeId v = 0; v < n && !any_pending; ++v)
      for (const auto& q : pending[v])
        if (!q.empty()) { any_pending = true; break; }
    for (NodeId v = 0; v < n; ++v)
      if (!halted[v]) all_halted = false;
    if (all_halted && !any_pending) break;

    std::vector<std::vector<std::vector<Payload>>> next(n);
    for (NodeId v = 0; v < n; ++v) next[v].resize(nbrs[v].size());
    int sent_this_tick = 0;
    for (NodeId v = 0; v < n; ++v) {
      if (halted[v]) continue;
      std::vector<std::vector<Payload>> outbox(nbrs[v].size());
      bool halt = behavior[v]->on_round(tick, pending[v], outbox);
      for (std::size_t p = 0; p < outbox.size(); ++p) {
        long long bits_on_port = 0;
        for (auto& msg : outbox[p]) {
          int bits = (int)msg.size() * 8;
          bits_on_port += bits;
          tr.max_edge_bits = std::max(tr.max_edge_bits, bits);
          ++sent_this_tick;
          ++tr.total_messages;
          NodeId to = nbrs[v][p];
          next[to][port_of[to].at(v)].push_back(std::move(msg));
        }
        if (bandwidth > 0 && bits_on_port > bandwidth) {
          std::ostringstream os;
          os << "bandwidth exceeded on edge {" << v << "," << nbrs[v][p] << "} in round "
             << tick << ": " << bits_on_port << " bits > " << bandwidth;
          throw BandwidthError(os.str());
        }
      }
      if (halt) halted[v] = 1;
    }
    pending = std::move(next);
    ++tr.ticks;
    tr.per_round_message_count.push_back(sent_this_tick);
    if (sent_this_tick > 0) tr.rounds = tick;
  }

  for (NodeId v = 0; v < n; ++v) {
    tr.outputs.push_back(behavior[v]->output());
    tr.state_hashes.push_back(std::hash<std::string>{}(behavior[v]->snapshot()));
  }
  return tr;
}

std::vector<Payload> fragment_payload(const Payload& p, int bits) {
  int bytes = std::max(1, bits / 8);
  std::vector<Payload> frames;
  for (std::size_t i = 0; i < p.size(); i += bytes)
    frames.emplace_back(p.begin() + i, p.begin() + std::min(p.size(), i + bytes));
  if (frames.empty()) frames.emplace_back();
  return frames;
}

Payload reassemble_payload(const std::vector<Payload>& frames) {
  Payload out;
  for (const auto& f : frames) out.insert(out.end(), f.begin(), f.end());
  return out;
}

namespace {

int id_bytes_for(int n) {
  int logn = 1;
  while ((1 << logn) < n) ++logn;
  return (logn + 7) / 8;
}

void put_id(Payload& p, NodeId id, int width) {
  for (int b = 0; b < width; ++b) p.push_back((std::uint8_t)((id >> (8 * b)) & 0xff));
}

std::vector<NodeId> get_ids(const Payload& p, int width) {
  std::vector<NodeId> ids;
  for (std::size_t i = 0; i + width <= p.size(); i += width) {
    NodeId id = 0;
    for (int b = 0; b < width; ++b) id |= (NodeId)p[i + b] << (8 * b);
    ids.push_back(id);
  }
  return ids;
}

// Sends the local sorted neighbor list to every neighbor, then intersects
// each received list with its own to detect triangles through itself.
class TriangleDiscoveryBehavior : public NodeBehavior {
 public:
  explicit TriangleDiscoveryBehavior(int ids_per_frame) : ids_per_frame_(ids_per_frame) {}

  void init(const NodeContext& ctx) override {
    ctx_ = ctx;
    width_ = id_bytes_for(ctx.n);
    is_nbr_.assign(ctx.n, 0);
    for (NodeId u : ctx.neighbors) is_nbr_[u] = 1;
    learned_.resize(ctx.neighbors.size());
  }

  bool on_round(int round, const std::vector<std::vector<Payload>>& inbox,
                std::vector<std::vector<Payload>>& outbox) override {
    for (std::size_t p = 0; p < inbox.size(); ++p)
      for (const auto& msg : inbox[p])
        for (NodeId w : get_ids(msg, width_)) learned_[p].push_back(w);

    bool sent = false;
    std::size_t from = (std::size_t)(round - 1) * (std::size_t)ids_per_frame_;
    bool have_frame = ids_per_frame_ == 0 ? round == 1 : from < ctx_.neighbors.size();
    if (have_frame && !done_sending_) {
      Payload frame;
      std::size_t to = ids_per_frame_ == 0 ? ctx_.neighbors.size()
                                           : std::min(ctx_.neighbors.size(), from + ids_per_frame_);
      for (std::size_t i = from; i < to; ++i) put_id(frame, ctx_.neighbors[i], width_);
      for (auto& port : outbox) port.push_back(frame);
      sent = !ctx_.neighbors.empty();
      if (to >= ctx_.neighbors.size()) done_sending_ = true;
    } else {
      done_sending_ = true;
    }

    bool inbox_empty = true;
    for (const auto& q : inbox)
      if (!q.empty()) inbox_empty = false;
    // frames from any neighbor arrive in consecutive rounds, so one quiet
    // round after our own sends finished means everyone is done
    if (done_sending_ && !sent && inbox_empty && round >= 2) {
      finalize();
      return true;
    }
    if (ctx_.neighbors.empty()) {
      finalize();
      return true;
    }
    return false;
  }

  std::string output() const override { return out_; }

 private:
  void finalize() {
    std::vector<Triangle> tris;
    for (std::size_t p = 0; p < learned_.size(); ++p) {
      NodeId v = ctx_.neighbors[p];
      for (NodeId w : learned_[p])
        if (w != ctx_.id && w < (NodeId)is_nbr_.size() && is_nbr_[w])
          tris.push_back(make_triangle(ctx_.id, v, w));
    }
    std::sort(tris.begin(), tris.end());
    tris.erase(std::unique(tris.begin(), tris.end()), tris.end());
    std::ostringstream os;
    for (const auto& t : tris) os << t.a << "," << t.b << "," << t.c << ";";
    out_ = os.str();
  }

  int ids_per_frame_;  // 0 = unlimited (LOCAL)
  NodeContext ctx_;
  int width_ = 1;
  std::vector<char> is_nbr_;
  std::vector<std::vector<NodeId>> learned_;
  bool done_sending_ = false;
  std::string out_;
};

}  // namespace

TriangleDiscoveryResult triangle_discovery(const Graph& g, const SimModel& model) {
  const int n = g.node_count();
  int ids_per_frame = 0;
  if (model.mode == SimMode::kCongest) {
    int width = id_bytes_for(n);
    ids_per_frame = std::max(1, model.effective_bandwidth(n) / (8 * width));
  }
  auto factory = [&](NodeId) {
    return std::make_unique<TriangleDiscoveryBehavior>(ids_per_frame);
  };
  TriangleDiscoveryResult res;
  res.transcript = run(g, factory, model, 0, 4 * n + 8);
  res.rounds = res.transcript.rounds;
  res.per_node.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    std::istringstream is(res.transcript.outputs[v]);
    std::string item;
    while (std::getline(is, item, ';')) {
      if (item.empty()) continue;
      Triangle t{};
      std::sscanf(item.c_str(), "%d,%d,%d", &t.a, &t.b, &t.c);
      res.per_node[v].push_back(t);
    }
  }
  return res;
}

}  // namespace mtet
