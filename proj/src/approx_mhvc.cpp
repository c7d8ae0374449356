#include "mtet/approx_mhvc.hpp"

#include <algorithm>
#include <random>

namespace mtet {

namespace {

constexpr std::uint8_t kPropose = 'P';
constexpr std::uint8_t kWinner = 'W';
constexpr std::uint8_t kSelected = 'S';
constexpr std::uint8_t kCovered = 'C';
constexpr std::uint8_t kDone = 'D';
constexpr std::uint8_t kRequest = 'R';
constexpr std::uint8_t kOffer = 'O';
constexpr std::uint8_t kRaise = 'X';

Payload tag_u64_u32(std::uint8_t tag, std::uint64_t a, std::uint32_t b) {
  Payload p{tag};
  for (int i = 0; i < 8; ++i) p.push_back((std::uint8_t)((a >> (8 * i)) & 0xff));
  for (int i = 0; i < 4; ++i) p.push_back((std::uint8_t)((b >> (8 * i)) & 0xff));
  return p;
}

std::pair<std::uint64_t, std::uint32_t> read_u64_u32(const Payload& p) {
  std::uint64_t a = 0;
  std::uint32_t b = 0;
  for (int i = 0; i < 8; ++i) a |= (std::uint64_t)p[1 + i] << (8 * i);
  for (int i = 0; i < 4; ++i) b |= (std::uint32_t)p[9 + i] << (8 * i);
  return {a, b};
}

Payload tag_rational(std::uint8_t tag, const Rational& r) {
  std::string s = format_rational(r);
  Payload p{tag};
  p.insert(p.end(), s.begin(), s.end());
  return p;
}

Rational read_rational(const Payload& p) {
  return parse_rational(std::string(p.begin() + 1, p.end()));
}

// Proposal phases of three rounds: draw/propose, node arbitration, selection
// notice. Hyperedge replies travel on the round boundary, node replies land
// in the same round, matching the simulator's delivery rule.
class MatchingNode : public HyperEntityBehavior {
 public:
  void init(const HyperEntityContext& ctx) override {
    ctx_ = ctx;
    done_.assign(ctx.incident.size(), 0);
  }
  bool on_round(int round, const std::vector<MaybePayload>& inbox,
                std::vector<MaybePayload>& outbox) override {
    int sub = (round - 1) % 3;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> proposals;
    for (std::size_t i = 0; i < inbox.size(); ++i) {
      if (!inbox[i]) continue;
      switch ((*inbox[i])[0]) {
        case kPropose:
          proposals.push_back(read_u64_u32(*inbox[i]));
          break;
        case kSelected:
          in_cover_ = true;
          done_[i] = 1;
          break;
        case kDone:
          done_[i] = 1;
          break;
        default:
          break;
      }
    }
    if (sub == 0) {
      bool all_done = std::all_of(done_.begin(), done_.end(), [](char d) { return d != 0; });
      return all_done;
    }
    if (sub == 1 && !proposals.empty()) {
      auto best = *std::max_element(proposals.begin(), proposals.end());
      for (std::size_t i = 0; i < outbox.size(); ++i)
        if (!done_[i]) outbox[i] = tag_u64_u32(kWinner, best.first, best.second);
    }
    if (sub == 2 && in_cover_ && !notified_) {
      notified_ = true;
      for (std::size_t i = 0; i < outbox.size(); ++i)
        if (!done_[i]) outbox[i] = Payload{kCovered};
    }
    return false;
  }
  std::string output() const override { return in_cover_ ? "1" : "0"; }
  std::string snapshot() const override {
    return output() + (notified_ ? "n" : "-") + std::string(done_.begin(), done_.end());
  }

 private:
  HyperEntityContext ctx_;
  std::vector<char> done_;
  bool in_cover_ = false;
  bool notified_ = false;
};

class MatchingHyperedge : public HyperEntityBehavior {
 public:
  void init(const HyperEntityContext& ctx) override {
    ctx_ = ctx;
    rng_.seed(ctx.rng_seed);
  }
  bool on_round(int round, const std::vector<MaybePayload>& inbox,
                std::vector<MaybePayload>& outbox) override {
    int sub = (round - 1) % 3;
    if (sub == 0) {
      priority_ = rng_();
      for (auto& slot : outbox) slot = tag_u64_u32(kPropose, priority_, (std::uint32_t)ctx_.id);
      return false;
    }
    if (sub == 1) {
      bool won = true;
      for (const auto& msg : inbox) {
        if (!msg || (*msg)[0] != kWinner) {
          won = false;
          break;
        }
        auto [prio, id] = read_u64_u32(*msg);
        if (prio != priority_ || id != (std::uint32_t)ctx_.id) won = false;
      }
      if (won) {
        selected_ = true;
        for (auto& slot : outbox) slot = Payload{kSelected};
        return true;
      }
      return false;
    }
    for (const auto& msg : inbox)
      if (msg && (*msg)[0] == kCovered) covered_ = true;
    if (covered_) {
      for (auto& slot : outbox) slot = Payload{kDone};
      return true;
    }
    return false;
  }
  std::string output() const override { return selected_ ? "sel" : (covered_ ? "cov" : "open"); }

 private:
  HyperEntityContext ctx_;
  std::mt19937_64 rng_;
  std::uint64_t priority_ = 0;
  bool selected_ = false;
  bool covered_ = false;
};

// Snaps a positive amount down onto a 2^-20 grid so residuals cannot grow
// unbounded denominators over many phases.
Rational quantize_down(const Rational& r) {
  const long long grid = 1LL << 20;
  long long num = (r.numerator() * grid) / r.denominator();
  if (num <= 0) return r;
  return Rational(num, grid);
}

class PrimalDualNode : public HyperEntityBehavior {
 public:
  explicit PrimalDualNode(Rational eps_prime) : eps_prime_(std::move(eps_prime)) {}
  void init(const HyperEntityContext& ctx) override {
    ctx_ = ctx;
    residual_ = ctx.weight;
    threshold_ = eps_prime_ * ctx.weight;
    done_.assign(ctx.incident.size(), 0);
  }
  bool on_round(int round, const std::vector<MaybePayload>& inbox,
                std::vector<MaybePayload>& outbox) override {
    int sub = (round - 1) % 3;
    std::vector<std::size_t> requests;
    Rational total_raise(0);
    for (std::size_t i = 0; i < inbox.size(); ++i) {
      if (!inbox[i]) continue;
      switch ((*inbox[i])[0]) {
        case kRequest:
          requests.push_back(i);
          break;
        case kRaise:
          total_raise += read_rational(*inbox[i]);
          break;
        case kDone:
          done_[i] = 1;
          break;
        default:
          break;
      }
    }
    if (sub == 0)
      return std::all_of(done_.begin(), done_.end(), [](char d) { return d != 0; });
    if (sub == 1 && !requests.empty() && !in_cover_) {
      Rational offer = residual_ / Rational((long long)requests.size());
      for (std::size_t i : requests) outbox[i] = tag_rational(kOffer, offer);
    }
    if (sub == 2) {
      residual_ -= total_raise;
      if (residual_ < Rational(0)) throw std::logic_error("dual raise overshot a node budget");
      if (!in_cover_ && residual_ <= threshold_) {
        in_cover_ = true;
        for (std::size_t i = 0; i < outbox.size(); ++i)
          if (!done_[i]) outbox[i] = Payload{kCovered};
      }
    }
    return false;
  }
  std::string output() const override { return in_cover_ ? "1" : "0"; }
  std::string snapshot() const override {
    return output() + format_rational(residual_) + std::string(done_.begin(), done_.end());
  }

 private:
  Rational eps_prime_;
  HyperEntityContext ctx_;
  Rational residual_{0}, threshold_{0};
  std::vector<char> done_;
  bool in_cover_ = false;
};

class PrimalDualHyperedge : public HyperEntityBehavior {
 public:
  void init(const HyperEntityContext& ctx) override { ctx_ = ctx; }
  bool on_round(int round, const std::vector<MaybePayload>& inbox,
                std::vector<MaybePayload>& outbox) override {
    int sub = (round - 1) % 3;
    if (sub == 0) {
      for (auto& slot : outbox) slot = Payload{kRequest};
      return false;
    }
    if (sub == 1) {
      std::optional<Rational> min_offer;
      bool complete = true;
      for (const auto& msg : inbox) {
        if (!msg || (*msg)[0] != kOffer) {
          complete = false;
          break;
        }
        Rational o = read_rational(*msg);
        if (!min_offer || o < *min_offer) min_offer = o;
      }
      if (complete && min_offer && *min_offer > Rational(0)) {
        Rational delta = quantize_down(*min_offer);
        for (auto& slot : outbox) slot = tag_rational(kRaise, delta);
      }
      return false;
    }
    for (const auto& msg : inbox)
      if (msg && (*msg)[0] == kCovered) covered_ = true;
    if (covered_) {
      for (auto& slot : outbox) slot = Payload{kDone};
      return true;
    }
    return false;
  }
  std::string output() const override { return covered_ ? "cov" : "open"; }

 private:
  HyperEntityContext ctx_;
  bool covered_ = false;
};

}  // namespace

HyperProgramFactory mhvc_matching_program() {
  return [](bool is_hyperedge, int) -> std::unique_ptr<HyperEntityBehavior> {
    if (is_hyperedge) return std::make_unique<MatchingHyperedge>();
    return std::make_unique<MatchingNode>();
  };
}

HyperProgramFactory mhvc_primal_dual_program(const Rational& eps_prime) {
  if (eps_prime <= Rational(0) || eps_prime >= Rational(1))
    throw std::invalid_argument("eps_prime must lie strictly between 0 and 1");
  return [eps_prime](bool is_hyperedge, int) -> std::unique_ptr<HyperEntityBehavior> {
    if (is_hyperedge) return std::make_unique<PrimalDualHyperedge>();
    return std::make_unique<PrimalDualNode>(eps_prime);
  };
}

MhvcRunReport run_mhvc(const Graph& g, const ReducedHypergraph& rh,
                       const HyperProgramFactory& program, const SimModel& model,
                       std::uint64_t seed, int max_rounds) {
  MhvcRunReport rep;
  rep.direct = direct_run_hypergraph(rh, program, seed, max_rounds);
  rep.simulated = run_hypergraph_on_graph(g, rh, program, model, seed, max_rounds);
  rep.outputs_match = rep.direct.node_outputs == rep.simulated.node_outputs &&
                      rep.direct.hyperedge_outputs == rep.simulated.hyperedge_outputs &&
                      rep.direct.round_hashes == rep.simulated.round_hashes &&
                      !rep.direct.timed_out && !rep.simulated.timed_out;
  for (int v = 0; v < rh.h.node_count(); ++v)
    if (rep.direct.node_outputs[v] == "1") {
      rep.cover_nodes.push_back(v);
      rep.value += rh.h.node_weight(v);
    }
  rep.cover_valid = true;
  for (const auto& members : rh.h.hyperedges()) {
    bool hit = false;
    for (int v : members)
      if (rep.direct.node_outputs[v] == "1") hit = true;
    if (!hit) rep.cover_valid = false;
  }
  return rep;
}

MtetApproxResult mtet_via_mhvc(const Graph& g, MhvcVariant variant, const SimModel& model,
                               std::uint64_t seed, const Rational& eps_prime) {
  auto rh = reduced_hypergraph(g);
  HyperProgramFactory program = variant == MhvcVariant::kMatching
                                    ? mhvc_matching_program()
                                    : mhvc_primal_dual_program(eps_prime);
  MtetApproxResult res;
  res.report = run_mhvc(g, rh, program, model, seed);
  for (int v : res.report.cover_nodes) res.cover.insert(rh.node_to_edge[v]);
  res.value = res.report.value;
  res.valid = is_tet(g, res.cover);
  return res;
}

}  // namespace mtet
