#include "lhlll/toy.hpp"

#include <stdexcept>

namespace lhlll {

namespace {

class BitEvalContext : public EvalContext {
 public:
  explicit BitEvalContext(ValueReader r) : read_(std::move(r)) {}
  void on_values_changed(VarIndex) override {}
  bool is_bad(const EventSpec& e) override {
    for (VarIndex i = e.vbl_lo; i <= e.hi; ++i)
      if (read_(i) != 1) return false;
    return true;
  }

 private:
  ValueReader read_;
};

class BlockFamily : public EventFamily {
 public:
  BlockFamily(std::string name, int stride, int len, Rat pstar, Rat z, Rat alpha)
      : name_(std::move(name)), stride_(stride), len_(len),
        pstar_(std::move(pstar)), z_(std::move(z)), alpha_(std::move(alpha)) {
    if (stride_ < 1 || len_ < 1) throw std::invalid_argument("bad block family shape");
    if (!(pstar_ > 0 && pstar_ < 1 && z_ > 0 && z_ < 1 && alpha_ > 0 && alpha_ < 1))
      throw std::invalid_argument("P*, z, alpha must lie in (0,1)");
  }

  std::string name() const override { return name_; }

  VariableSpec variable(VarIndex i) const override {
    return VariableSpec{i, 2, {Rat(1, 2), Rat(1, 2)}};
  }

  Rat alpha() const override { return alpha_; }
  Rat pstar(const EventSpec&) const override { return pstar_; }
  Rat z(const EventSpec&) const override { return z_; }

  std::vector<EventSpec> events_with_rsp_containing(VarIndex v) const override {
    std::vector<EventSpec> out;
    if (v < 0) return out;
    // events i with stride*i <= v <= stride*i + len - 1
    VarIndex lo = (v - (len_ - 1) + stride_ - 1) / stride_;
    if (lo < 0) lo = 0;
    for (VarIndex i = lo; i * stride_ <= v; ++i)
      if (v <= i * stride_ + len_ - 1 && exists(i)) out.push_back(event(i));
    return out;
  }

  bool visit_events_at(VarIndex h, VarIndex window_lo,
                       const EventVisitor& fn) const override {
    VarIndex top = h - (len_ - 1);
    if (top < 0 || top % stride_ != 0) return true;
    if (!exists(top / stride_)) return true;
    EventSpec e = event(top / stride_);
    if (e.vbl_lo < window_lo) return true;
    return fn(e);
  }

  std::unique_ptr<EvalContext> make_eval_context(ValueReader reader) const override {
    return std::make_unique<BitEvalContext>(std::move(reader));
  }

  std::optional<EventSpec> find_event(const EventKey& id) const override {
    if (id.len != 1 || id.t[0] < 0) return std::nullopt;
    if (max_events_ >= 0 && id.t[0] >= max_events_) return std::nullopt;
    return event(id.t[0]);
  }

  std::vector<EventSpec> pstar_check_samples() const override {
    return {event(0), event(1)};
  }

  bool exists(VarIndex i) const {
    return i >= 0 && (max_events_ < 0 || i < max_events_);
  }

  EventSpec event(VarIndex i) const {
    EventSpec e;
    e.id = EventKey{i};
    e.vbl_lo = e.rsp_lo = i * stride_;
    e.hi = i * stride_ + len_ - 1;
    return e;
  }

  void set_max_events(int64_t m) { max_events_ = m; }

 private:
  std::string name_;
  int stride_, len_;
  Rat pstar_, z_, alpha_;
  int64_t max_events_ = -1;  // -1 = infinite
};

}  // namespace

std::shared_ptr<EventFamily> make_block_family(std::string name, int stride, int len,
                                               Rat pstar, Rat z, Rat alpha) {
  return std::make_shared<BlockFamily>(std::move(name), stride, len, std::move(pstar),
                                       std::move(z), std::move(alpha));
}

std::shared_ptr<EventFamily> make_toy3() {
  return make_block_family("toy3", 2, 3, Rat(1, 8), Rat(1, 3), Rat(9, 10));
}

std::shared_ptr<EventFamily> make_single_bit() {
  auto f = std::make_shared<BlockFamily>("single-bit", 1, 1, Rat(1, 2), Rat(9, 10),
                                         Rat(3, 5));
  f->set_max_events(1);
  return f;
}

std::shared_ptr<EventFamily> make_disjoint_blocks() {
  return make_block_family("disjoint-blocks", 3, 3, Rat(1, 8), Rat(1, 2), Rat(1, 2));
}

std::shared_ptr<EventFamily> builtin_family(const std::string& name) {
  if (name == "toy3") return make_toy3();
  if (name == "single-bit") return make_single_bit();
  if (name == "disjoint-blocks") return make_disjoint_blocks();
  throw std::invalid_argument("unknown built-in family: " + name);
}

}  // namespace lhlll
