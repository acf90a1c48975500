// Copyright 2026 The SubMPC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "submpc/protocols.h"

#include <algorithm>
#include <sstream>

#include "submpc/random_source.h"
#include "submpc/sharing.h"

namespace submpc {

namespace {

constexpr std::uint64_t kMinShamirModulus = 5;

FieldElement Reduce(const PrimeField& field, const BigInt& value) {
  BigInt r = value % field.modulus();
  if (r < 0) r += field.modulus();
  return FieldElement(field, r.convert_to<std::uint64_t>());
}

std::vector<std::uint64_t> Values(const std::vector<FieldElement>& elements) {
  std::vector<std::uint64_t> out;
  out.reserve(elements.size());
  for (const auto& e : elements) out.push_back(e.value());
  return out;
}

std::vector<FieldElement> Elements(const PrimeField& field,
                                   const std::vector<std::uint64_t>& values) {
  std::vector<FieldElement> out;
  out.reserve(values.size());
  for (std::uint64_t v : values) {
    if (v >= field.modulus()) throw ProtocolError("received value outside the field");
    out.emplace_back(field, v);
  }
  return out;
}

// Product form encoded for poly-direct: a_k(x) * Da and b_k(y) * Db as field
// residues, where Da and Db are the least common denominators of all a and
// b values, so sum_k a_k b_k carries Da * Db * f1.
struct EncodedProductForm {
  std::vector<ProductTerm> terms;
  BigInt a_denominator = 1;
  BigInt b_denominator = 1;

  BigInt Denominator() const { return a_denominator * b_denominator; }
};

EncodedProductForm MakeProductForm(const FunctionTable& f1) {
  EncodedProductForm pf{f1.EffectiveProductForm()};
  for (const auto& t : pf.terms) {
    for (const auto& v : t.a) pf.a_denominator = Lcm(pf.a_denominator, Denominator(v));
    for (const auto& v : t.b) pf.b_denominator = Lcm(pf.b_denominator, Denominator(v));
  }
  return pf;
}

BigInt ScaledMaxAbs(ProtocolId id, const FunctionTable& f1) {
  if (id != ProtocolId::kPolyDirect) return f1.scaled_max_abs();
  const auto pf = MakeProductForm(f1);
  Rational max_abs = 0;
  for (const auto& v : f1.values()) max_abs = std::max(max_abs, Abs(v));
  return Numerator(max_abs * pf.Denominator());  // integral: D divides Da * Db
}

// Shared opening step: Alice picks I and sends it to Bob in round 1.
IndexSet AliceChooseIndices(Transport& net, std::uint64_t n, std::uint64_t m,
                            const std::optional<IndexSet>& fixed) {
  IndexSet indices = fixed ? *fixed : SampleIndices(n, m, net.Random(Party::kAlice, "I"));
  if (indices.n() != n || indices.m() != m) {
    throw std::invalid_argument("fixed index set does not match (n, m)");
  }
  std::vector<std::uint64_t> zero_based;
  for (std::uint64_t i : indices.indices()) zero_based.push_back(i - 1);
  net.Send(Party::kAlice, Party::kBob, 1, "index_set", PayloadUnit::kIndex, zero_based);
  return indices;
}

IndexSet BobReceiveIndices(Transport& net, std::uint64_t n) {
  std::vector<std::uint64_t> zero_based = net.Receive(Party::kBob, Party::kAlice, "index_set");
  for (auto& i : zero_based) ++i;
  return IndexSet(n, std::move(zero_based));
}

struct RunContext {
  const FunctionTable& f1;
  PrimeField field;
  Transport& net;
  std::uint64_t n;
  std::uint64_t m;
  const ProtocolOptions& options;
};

// ---------------------------------------------------------------------------
// One-time pad protocol.

class OtpAlice {
 public:
  OtpAlice(const RunContext& ctx, const Sequence& x) : ctx_(ctx), x_(x) {}

  void ChooseIndices() { indices_ = AliceChooseIndices(ctx_.net, ctx_.n, ctx_.m, ctx_.options.fixed_indices); }

  void SendMaskedSymbols() {
    auto& rng = ctx_.net.Random(Party::kAlice, "alpha");
    std::vector<std::uint64_t> masked;
    for (std::uint64_t i : indices_->indices()) {
      pads_.push_back(DrawPad(ctx_.f1.x_size(), rng));
      masked.push_back(PadShift(x_[i - 1], pads_.back(), PadDirection::kEncrypt));
    }
    ctx_.net.Send(Party::kAlice, Party::kCharlie, 2, "masked_x", PayloadUnit::kXSymbol, masked);
  }

  void ReceiveShareMatrices() {
    shares_ = Elements(ctx_.field, ctx_.net.Receive(Party::kAlice, Party::kCharlie, "share_matrix"));
  }

  void SendPads() {
    std::vector<std::uint64_t> shifts;
    for (const auto& pad : pads_) shifts.push_back(pad.shift);
    ctx_.net.Send(Party::kAlice, Party::kBob, 4, "pads", PayloadUnit::kXSymbol, shifts);
  }

  void ReceivePadsAndComputeShare() {
    const auto beta = ctx_.net.Receive(Party::kAlice, Party::kBob, "pads");
    frequency_share_ = DecryptFrequencyShare(ctx_, shares_, pads_, beta);
    function_share_ = WeightByF1(ctx_, frequency_share_);
  }

  void SendSalt() {
    salt_ = RandomFieldElement(ctx_.field, ctx_.net.Random(Party::kAlice, "Z"));
    ctx_.net.Send(Party::kAlice, Party::kBob, 5, "salt", PayloadUnit::kFieldElement,
                  {salt_->value()});
  }

  void SendFinal() {
    ctx_.net.Send(Party::kAlice, Party::kCharlie, 6, "F_A+Z", PayloadUnit::kFieldElement,
                  {(*function_share_ + *salt_).value()});
  }

  // L_A(x, y) = sum_j M_A,j(shift_alpha_j(x), shift_beta_j(y)).
  static std::vector<FieldElement> DecryptFrequencyShare(const RunContext& ctx,
                                                         const std::vector<FieldElement>& shares,
                                                         const std::vector<PadSymbol>& alpha,
                                                         const std::vector<std::uint64_t>& beta) {
    const std::size_t xs = ctx.f1.x_size(), ys = ctx.f1.y_size();
    std::vector<FieldElement> freq(xs * ys, FieldElement::Zero(ctx.field));
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      const PadSymbol beta_pad{static_cast<std::uint32_t>(beta.at(j)), ys};
      for (Symbol x = 0; x < xs; ++x) {
        const Symbol xbar = PadShift(x, alpha[j], PadDirection::kEncrypt);
        for (Symbol y = 0; y < ys; ++y) {
          const Symbol ybar = PadShift(y, beta_pad, PadDirection::kEncrypt);
          freq[x * ys + y] += shares.at(j * xs * ys + xbar * ys + ybar);
        }
      }
    }
    return freq;
  }

  // F = sum_{x,y} D f1(x, y) L(x, y).
  static FieldElement WeightByF1(const RunContext& ctx, const std::vector<FieldElement>& freq) {
    const auto f1_field = ctx.f1.ToField(ctx.field);
    FieldElement sum = FieldElement::Zero(ctx.field);
    for (std::size_t c = 0; c < freq.size(); ++c) sum += f1_field[c] * freq[c];
    return sum;
  }

  const std::vector<FieldElement>& frequency_share() const { return frequency_share_; }
  const IndexSet& indices() const { return *indices_; }

 private:
  const RunContext& ctx_;
  const Sequence& x_;
  std::optional<IndexSet> indices_;
  std::vector<PadSymbol> pads_;
  std::vector<FieldElement> shares_;
  std::vector<FieldElement> frequency_share_;
  std::optional<FieldElement> function_share_;
  std::optional<FieldElement> salt_;
};

class OtpBob {
 public:
  OtpBob(const RunContext& ctx, const Sequence& y) : ctx_(ctx), y_(y) {}

  void ReceiveIndices() { indices_ = BobReceiveIndices(ctx_.net, ctx_.n); }

  void SendMaskedSymbols() {
    auto& rng = ctx_.net.Random(Party::kBob, "beta");
    std::vector<std::uint64_t> masked;
    for (std::uint64_t i : indices_->indices()) {
      pads_.push_back(DrawPad(ctx_.f1.y_size(), rng));
      masked.push_back(PadShift(y_[i - 1], pads_.back(), PadDirection::kEncrypt));
    }
    ctx_.net.Send(Party::kBob, Party::kCharlie, 2, "masked_y", PayloadUnit::kYSymbol, masked);
  }

  void ReceiveShareMatrices() {
    shares_ = Elements(ctx_.field, ctx_.net.Receive(Party::kBob, Party::kCharlie, "share_matrix"));
  }

  void SendPads() {
    std::vector<std::uint64_t> shifts;
    for (const auto& pad : pads_) shifts.push_back(pad.shift);
    ctx_.net.Send(Party::kBob, Party::kAlice, 4, "pads", PayloadUnit::kYSymbol, shifts);
  }

  void ReceivePadsAndComputeShare() {
    const auto alpha_shifts = ctx_.net.Receive(Party::kBob, Party::kAlice, "pads");
    std::vector<PadSymbol> alpha;
    for (std::uint64_t s : alpha_shifts) {
      alpha.push_back({static_cast<std::uint32_t>(s), ctx_.f1.x_size()});
    }
    std::vector<std::uint64_t> beta;
    for (const auto& pad : pads_) beta.push_back(pad.shift);
    frequency_share_ = OtpAlice::DecryptFrequencyShare(ctx_, shares_, alpha, beta);
    function_share_ = OtpAlice::WeightByF1(ctx_, frequency_share_);
  }

  void ReceiveSalt() {
    salt_ = Elements(ctx_.field, ctx_.net.Receive(Party::kBob, Party::kAlice, "salt")).at(0);
  }

  void SendFinal() {
    ctx_.net.Send(Party::kBob, Party::kCharlie, 6, "F_B-Z", PayloadUnit::kFieldElement,
                  {(*function_share_ - *salt_).value()});
  }

  const std::vector<FieldElement>& frequency_share() const { return frequency_share_; }

 private:
  const RunContext& ctx_;
  const Sequence& y_;
  std::optional<IndexSet> indices_;
  std::vector<PadSymbol> pads_;
  std::vector<FieldElement> shares_;
  std::vector<FieldElement> frequency_share_;
  std::optional<FieldElement> function_share_;
  std::optional<FieldElement> salt_;
};

class OtpCharlie {
 public:
  explicit OtpCharlie(const RunContext& ctx) : ctx_(ctx) {}

  // Builds the indicator matrices M_j of the masked pairs and splits each
  // entry additively.
  void ReceiveMaskedAndSendShares() {
    const auto xbar = ctx_.net.Receive(Party::kCharlie, Party::kAlice, "masked_x");
    const auto ybar = ctx_.net.Receive(Party::kCharlie, Party::kBob, "masked_y");
    if (xbar.size() != ctx_.m || ybar.size() != ctx_.m) {
      throw ProtocolError("masked sequences have wrong length");
    }
    const std::size_t xs = ctx_.f1.x_size(), ys = ctx_.f1.y_size();
    auto& rng = ctx_.net.Random(Party::kCharlie, "M_A");
    std::vector<FieldElement> share_a, share_b;
    for (std::size_t j = 0; j < ctx_.m; ++j) {
      for (std::size_t x = 0; x < xs; ++x) {
        for (std::size_t y = 0; y < ys; ++y) {
          const FieldElement indicator(ctx_.field, xbar[j] == x && ybar[j] == y ? 1 : 0);
          const AdditiveShares split = AdditiveSplit(indicator, rng);
          share_a.push_back(split.share_a);
          share_b.push_back(split.share_b);
        }
      }
    }
    ctx_.net.Send(Party::kCharlie, Party::kAlice, 3, "share_matrix", PayloadUnit::kFieldElement,
                  Values(share_a));
    ctx_.net.Send(Party::kCharlie, Party::kBob, 3, "share_matrix", PayloadUnit::kFieldElement,
                  Values(share_b));
  }

  Rational ReceiveAndDecode() {
    const FieldElement a =
        Elements(ctx_.field, ctx_.net.Receive(Party::kCharlie, Party::kAlice, "F_A+Z")).at(0);
    const FieldElement b =
        Elements(ctx_.field, ctx_.net.Receive(Party::kCharlie, Party::kBob, "F_B-Z")).at(0);
    return DecodeCentered(a + b, ctx_.f1.common_denominator(), ctx_.m);
  }

 private:
  const RunContext& ctx_;
};

struct RunOutcome {
  IndexSet indices;
  Rational estimate;
  BigInt denominator;
  std::size_t rank = 0;
};

RunOutcome RunOtp(const RunContext& ctx, const Sequence& x, const Sequence& y) {
  OtpAlice alice(ctx, x);
  OtpBob bob(ctx, y);
  OtpCharlie charlie(ctx);

  alice.ChooseIndices();
  bob.ReceiveIndices();
  alice.SendMaskedSymbols();
  bob.SendMaskedSymbols();
  charlie.ReceiveMaskedAndSendShares();
  alice.ReceiveShareMatrices();
  bob.ReceiveShareMatrices();
  alice.SendPads();
  bob.SendPads();
  alice.ReceivePadsAndComputeShare();
  bob.ReceivePadsAndComputeShare();
  alice.SendSalt();
  bob.ReceiveSalt();
  alice.SendFinal();
  bob.SendFinal();
  Rational estimate = charlie.ReceiveAndDecode();

  // Simulator-side check: the decrypted shares must add up to L.
  const auto counts = PartialFrequency(x, y, alice.indices(), ctx.f1.x_size(), ctx.f1.y_size());
  for (std::size_t c = 0; c < counts.counts.size(); ++c) {
    if (alice.frequency_share()[c] + bob.frequency_share()[c] !=
        FieldElement(ctx.field, counts.counts[c])) {
      throw ProtocolError("L_A + L_B != L at cell " + std::to_string(c));
    }
  }
  return {alice.indices(), std::move(estimate), ctx.f1.common_denominator()};
}

// ---------------------------------------------------------------------------
// Polynomial secret-sharing protocols. Both have the same shape: Alice and
// Bob deal degree-1 shares of per-position vectors, every party evaluates a
// degree-2 polynomial F at its abscissa, and Charlie interpolates F(0).

// Per-party share vectors, j-major: entry [j * width + k].
struct DealtShares {
  std::vector<FieldElement> own;
  std::vector<std::uint64_t> to_first;   // coordinate for the first recipient
  std::vector<std::uint64_t> to_second;  // coordinate for the second recipient
};

DealtShares Deal(const std::vector<FieldElement>& secrets, int own_abscissa, int first_abscissa,
                 int second_abscissa, RandomSource& rng) {
  DealtShares out;
  for (const auto& s : secrets) {
    const ShareTriple t = Degree1Share(s, rng);
    out.own.push_back(t.at(own_abscissa));
    out.to_first.push_back(t.at(first_abscissa).value());
    out.to_second.push_back(t.at(second_abscissa).value());
  }
  return out;
}

// How one party turns its g and h share vectors into its sample of F.
using PolyEvaluator = FieldElement (*)(const RunContext&, const std::vector<FieldElement>& g,
                                       const std::vector<FieldElement>& h, std::size_t width_g,
                                       std::size_t width_h);

// F(t) = sum_{x,y} D f1(x, y) sum_j g_jx(t) h_jy(t).
FieldElement EvaluatePolyL(const RunContext& ctx, const std::vector<FieldElement>& g,
                           const std::vector<FieldElement>& h, std::size_t xs, std::size_t ys) {
  const auto f1_field = ctx.f1.ToField(ctx.field);
  FieldElement sum = FieldElement::Zero(ctx.field);
  for (std::size_t j = 0; j < ctx.m; ++j) {
    for (std::size_t x = 0; x < xs; ++x) {
      for (std::size_t y = 0; y < ys; ++y) {
        sum += f1_field[x * ys + y] * g[j * xs + x] * h[j * ys + y];
      }
    }
  }
  return sum;
}

// F(t) = sum_j sum_k A_jk(t) B_jk(t).
FieldElement EvaluatePolyDirect(const RunContext& ctx, const std::vector<FieldElement>& a,
                                const std::vector<FieldElement>& b, std::size_t rank,
                                std::size_t /*rank_b*/) {
  FieldElement sum = FieldElement::Zero(ctx.field);
  for (std::size_t j = 0; j < ctx.m; ++j) {
    for (std::size_t k = 0; k < rank; ++k) sum += a[j * rank + k] * b[j * rank + k];
  }
  return sum;
}

struct PolyShape {
  std::string alice_tag;   // tag of Alice's share messages
  std::string bob_tag;
  std::size_t width_a;     // entries per position in Alice's vector
  std::size_t width_b;
  PolyEvaluator evaluate;
  BigInt denominator;
};

class PolyAlice {
 public:
  PolyAlice(const RunContext& ctx, const PolyShape& shape) : ctx_(ctx), shape_(shape) {}

  void ChooseIndices() { indices_ = AliceChooseIndices(ctx_.net, ctx_.n, ctx_.m, ctx_.options.fixed_indices); }

  // `secrets` maps the chosen positions to the vector Alice shares.
  template <typename SecretFn>
  void DealShares(SecretFn secrets) {
    auto dealt = Deal(secrets(*indices_), 1, 2, 3, ctx_.net.Random(Party::kAlice, "alpha"));
    own_ = std::move(dealt.own);
    ctx_.net.Send(Party::kAlice, Party::kBob, 2, shape_.alice_tag, PayloadUnit::kFieldElement,
                  dealt.to_first);
    ctx_.net.Send(Party::kAlice, Party::kCharlie, 2, shape_.alice_tag, PayloadUnit::kFieldElement,
                  dealt.to_second);
  }

  void ReceiveAndEvaluate() {
    const auto h = Elements(ctx_.field, ctx_.net.Receive(Party::kAlice, Party::kBob, shape_.bob_tag));
    sample_ = shape_.evaluate(ctx_, own_, h, shape_.width_a, shape_.width_b);
  }

  void SendMask() {
    mask_ = RandomFieldElement(ctx_.field, ctx_.net.Random(Party::kAlice, "opening_mask"));
    ctx_.net.Send(Party::kAlice, Party::kBob, 3, "opening_mask", PayloadUnit::kFieldElement,
                  {mask_->value()});
  }

  // Masked: 3 F(1) + u, an additive share of Alice's Lagrange term.
  void SendSample() {
    if (!mask_) {
      ctx_.net.Send(Party::kAlice, Party::kCharlie, 4, "F(1)", PayloadUnit::kFieldElement,
                    {sample_->value()});
      return;
    }
    const FieldElement out = FieldElement(ctx_.field, 3) * *sample_ + *mask_;
    ctx_.net.Send(Party::kAlice, Party::kCharlie, 4, "3F(1)+u", PayloadUnit::kFieldElement,
                  {out.value()});
  }

  const IndexSet& indices() const { return *indices_; }

 private:
  const RunContext& ctx_;
  const PolyShape& shape_;
  std::optional<IndexSet> indices_;
  std::vector<FieldElement> own_;
  std::optional<FieldElement> sample_;
  std::optional<FieldElement> mask_;
};

class PolyBob {
 public:
  PolyBob(const RunContext& ctx, const PolyShape& shape) : ctx_(ctx), shape_(shape) {}

  void ReceiveIndices() { indices_ = BobReceiveIndices(ctx_.net, ctx_.n); }

  template <typename SecretFn>
  void DealShares(SecretFn secrets) {
    auto dealt = Deal(secrets(*indices_), 2, 1, 3, ctx_.net.Random(Party::kBob, "beta"));
    own_ = std::move(dealt.own);
    ctx_.net.Send(Party::kBob, Party::kAlice, 2, shape_.bob_tag, PayloadUnit::kFieldElement,
                  dealt.to_first);
    ctx_.net.Send(Party::kBob, Party::kCharlie, 2, shape_.bob_tag, PayloadUnit::kFieldElement,
                  dealt.to_second);
  }

  void ReceiveAndEvaluate() {
    const auto g =
        Elements(ctx_.field, ctx_.net.Receive(Party::kBob, Party::kAlice, shape_.alice_tag));
    sample_ = shape_.evaluate(ctx_, g, own_, shape_.width_a, shape_.width_b);
  }

  void ReceiveMask() {
    mask_ = Elements(ctx_.field, ctx_.net.Receive(Party::kBob, Party::kAlice, "opening_mask")).at(0);
  }

  // Masked: -3 F(2) - u.
  void SendSample() {
    if (!mask_) {
      ctx_.net.Send(Party::kBob, Party::kCharlie, 4, "F(2)", PayloadUnit::kFieldElement,
                    {sample_->value()});
      return;
    }
    const FieldElement out = -(FieldElement(ctx_.field, 3) * *sample_) - *mask_;
    ctx_.net.Send(Party::kBob, Party::kCharlie, 4, "-3F(2)-u", PayloadUnit::kFieldElement,
                  {out.value()});
  }

 private:
  const RunContext& ctx_;
  const PolyShape& shape_;
  std::optional<IndexSet> indices_;
  std::vector<FieldElement> own_;
  std::optional<FieldElement> sample_;
  std::optional<FieldElement> mask_;
};

class PolyCharlie {
 public:
  PolyCharlie(const RunContext& ctx, const PolyShape& shape) : ctx_(ctx), shape_(shape) {}

  void ReceiveAndEvaluate() {
    const auto g =
        Elements(ctx_.field, ctx_.net.Receive(Party::kCharlie, Party::kAlice, shape_.alice_tag));
    const auto h =
        Elements(ctx_.field, ctx_.net.Receive(Party::kCharlie, Party::kBob, shape_.bob_tag));
    sample_ = shape_.evaluate(ctx_, g, h, shape_.width_a, shape_.width_b);
  }

  Rational InterpolateAndDecode() {
    FieldElement at_zero = FieldElement::Zero(ctx_.field);
    if (ctx_.options.opening == OpeningMode::kPlain) {
      const FieldElement f1 =
          Elements(ctx_.field, ctx_.net.Receive(Party::kCharlie, Party::kAlice, "F(1)")).at(0);
      const FieldElement f2 =
          Elements(ctx_.field, ctx_.net.Receive(Party::kCharlie, Party::kBob, "F(2)")).at(0);
      at_zero = ReconstructTriple(ShareTriple{f1, f2, *sample_});
    } else {
      const FieldElement a =
          Elements(ctx_.field, ctx_.net.Receive(Party::kCharlie, Party::kAlice, "3F(1)+u")).at(0);
      const FieldElement b =
          Elements(ctx_.field, ctx_.net.Receive(Party::kCharlie, Party::kBob, "-3F(2)-u")).at(0);
      at_zero = a + b + *sample_;  // Lagrange weights at 1, 2, 3 are 3, -3, 1
    }
    return DecodeCentered(at_zero, shape_.denominator, ctx_.m);
  }

 private:
  const RunContext& ctx_;
  const PolyShape& shape_;
  std::optional<FieldElement> sample_;
};

template <typename AliceSecrets, typename BobSecrets>
RunOutcome RunPoly(const RunContext& ctx, const PolyShape& shape, AliceSecrets alice_secrets,
                   BobSecrets bob_secrets) {
  PolyAlice alice(ctx, shape);
  PolyBob bob(ctx, shape);
  PolyCharlie charlie(ctx, shape);

  alice.ChooseIndices();
  bob.ReceiveIndices();
  alice.DealShares(alice_secrets);
  bob.DealShares(bob_secrets);
  alice.ReceiveAndEvaluate();
  bob.ReceiveAndEvaluate();
  charlie.ReceiveAndEvaluate();
  if (ctx.options.opening == OpeningMode::kMasked) {
    alice.SendMask();
    bob.ReceiveMask();
  }
  alice.SendSample();
  bob.SendSample();
  Rational estimate = charlie.InterpolateAndDecode();
  return {alice.indices(), std::move(estimate), shape.denominator};
}

RunOutcome RunPolyL(const RunContext& ctx, const Sequence& x, const Sequence& y) {
  const std::size_t xs = ctx.f1.x_size(), ys = ctx.f1.y_size();
  const PolyShape shape{"g_shares", "h_shares", xs, ys, &EvaluatePolyL,
                        ctx.f1.common_denominator()};
  // Indicator vectors 1{x_i = x} and 1{y_i = y}.
  auto indicators = [&ctx](const Sequence& seq, std::size_t size) {
    return [&ctx, &seq, size](const IndexSet& indices) {
      std::vector<FieldElement> out;
      for (std::uint64_t i : indices.indices()) {
        for (std::size_t s = 0; s < size; ++s) {
          out.emplace_back(ctx.field, seq[i - 1] == s ? 1 : 0);
        }
      }
      return out;
    };
  };
  return RunPoly(ctx, shape, indicators(x, xs), indicators(y, ys));
}

RunOutcome RunPolyDirect(const RunContext& ctx, const Sequence& x, const Sequence& y) {
  const EncodedProductForm pf = MakeProductForm(ctx.f1);
  const std::size_t rank = pf.terms.size();
  const PolyShape shape{"a_shares", "b_shares", rank, rank, &EvaluatePolyDirect,
                        pf.Denominator()};
  auto alice_secrets = [&](const IndexSet& indices) {
    std::vector<FieldElement> out;
    for (std::uint64_t i : indices.indices()) {
      for (const auto& term : pf.terms) {
        out.push_back(Reduce(ctx.field, Numerator(term.a[x[i - 1]] * pf.a_denominator)));
      }
    }
    return out;
  };
  auto bob_secrets = [&](const IndexSet& indices) {
    std::vector<FieldElement> out;
    for (std::uint64_t i : indices.indices()) {
      for (const auto& term : pf.terms) {
        out.push_back(Reduce(ctx.field, Numerator(term.b[y[i - 1]] * pf.b_denominator)));
      }
    }
    return out;
  };
  RunOutcome outcome = RunPoly(ctx, shape, alice_secrets, bob_secrets);
  outcome.rank = rank;
  return outcome;
}

}  // namespace

std::string_view ProtocolName(ProtocolId id) {
  switch (id) {
    case ProtocolId::kOneTimePad: return "otp";
    case ProtocolId::kPolyL: return "poly-l";
    case ProtocolId::kPolyDirect: return "poly-direct";
  }
  return "?";
}

ProtocolId ParseProtocolId(std::string_view name) {
  for (ProtocolId id : kAllProtocols) {
    if (ProtocolName(id) == name) return id;
  }
  throw std::invalid_argument("unknown protocol '" + std::string(name) + "'");
}

std::size_t ProductRank(const FunctionTable& f1) {
  return f1.product_form() ? f1.product_form()->size() : f1.cell_count();
}

PrimeField SelectField(ProtocolId id, const FunctionTable& f1, std::uint64_t m) {
  PrimeField field = MinFieldSize(ScaledMaxAbs(id, f1), m);
  if (id != ProtocolId::kOneTimePad && field.modulus() < kMinShamirModulus) {
    field = PrimeField(kMinShamirModulus);
  }
  return field;
}

ProtocolResult RunProtocol(ProtocolId id, const FunctionTable& f1, const Sequence& x,
                           const Sequence& y, std::uint64_t m, const PartySources& sources,
                           const ProtocolOptions& options) {
  f1.CheckSequences(x, y);
  const std::uint64_t n = x.size();
  if (m == 0 || m > n) {
    throw std::invalid_argument("sample size m=" + std::to_string(m) + " must be in [1, " +
                                std::to_string(n) + "]");
  }
  PrimeField field = SelectField(id, f1, m);
  if (options.modulus) {
    PrimeField requested(*options.modulus);
    if (requested.modulus() < field.modulus()) {
      throw std::invalid_argument("field F_" + std::to_string(requested.modulus()) +
                                  " too small; need p >= " + std::to_string(field.modulus()));
    }
    field = requested;
  }
  const BitWidths widths{CeilLog2(n), CeilLog2(f1.x_size()), CeilLog2(f1.y_size()),
                         field.bits_per_element()};
  Transport net(widths, sources);
  const RunContext ctx{f1, field, net, n, m, options};

  RunOutcome outcome = [&] {
    switch (id) {
      case ProtocolId::kOneTimePad: return RunOtp(ctx, x, y);
      case ProtocolId::kPolyL: return RunPolyL(ctx, x, y);
      case ProtocolId::kPolyDirect: return RunPolyDirect(ctx, x, y);
    }
    throw std::invalid_argument("unknown protocol");
  }();
  net.view(Party::kCharlie).output = outcome.estimate;

  ProtocolResult result{.protocol = id, .estimate = outcome.estimate, .indices = outcome.indices};
  result.transcript = net.transcript();
  result.widths = widths;
  result.total_bits = net.total_bits();
  result.index_bits = IndexBits(n, m);
  result.rate = Rational(result.total_bits, n);
  result.params.n = n;
  result.params.m = m;
  result.params.modulus = field.modulus();
  result.params.x_size = f1.x_size();
  result.params.y_size = f1.y_size();
  result.params.rank = outcome.rank;
  result.params.denominator = outcome.denominator;
  result.params.opening = options.opening;
  result.views = net.TakeViews();
  return result;
}

ProtocolResult RunProtocol(ProtocolId id, const FunctionTable& f1, const Sequence& x,
                           const Sequence& y, std::uint64_t m, std::uint64_t seed,
                           const ProtocolOptions& options) {
  SeededRandomSource alice(seed, 0), bob(seed, 1), charlie(seed, 2);
  ProtocolResult result = RunProtocol(id, f1, x, y, m, PartySources{&alice, &bob, &charlie},
                                      options);
  result.params.seed = seed;
  return result;
}

ProtocolResult RunProtocolOtp(const FunctionTable& f1, const Sequence& x, const Sequence& y,
                              std::uint64_t m, std::uint64_t seed) {
  return RunProtocol(ProtocolId::kOneTimePad, f1, x, y, m, seed);
}

ProtocolResult RunProtocolPolyL(const FunctionTable& f1, const Sequence& x, const Sequence& y,
                                std::uint64_t m, std::uint64_t seed) {
  return RunProtocol(ProtocolId::kPolyL, f1, x, y, m, seed);
}

ProtocolResult RunProtocolPolyDirect(const FunctionTable& f1, const Sequence& x,
                                     const Sequence& y, std::uint64_t m, std::uint64_t seed) {
  return RunProtocol(ProtocolId::kPolyDirect, f1, x, y, m, seed);
}

std::uint64_t IndexBits(std::uint64_t n, std::uint64_t m) { return m * CeilLog2(n); }

std::uint64_t ExtraBitsClosedForm(ProtocolId id, std::size_t x_size, std::size_t y_size,
                                  std::uint64_t m, std::uint64_t modulus, std::size_t rank,
                                  OpeningMode opening) {
  const std::uint64_t lp = CeilLog2(modulus);
  const std::uint64_t lx = CeilLog2(x_size), ly = CeilLog2(y_size);
  const std::uint64_t masked = opening == OpeningMode::kMasked ? lp : 0;
  switch (id) {
    case ProtocolId::kOneTimePad:
      return 2 * m * (lx + ly + x_size * y_size * lp) + 3 * lp;
    case ProtocolId::kPolyL:
      return (2 * m * (x_size + y_size) + 2) * lp + masked;
    case ProtocolId::kPolyDirect:
      return (4 * m * rank + 2) * lp + masked;
  }
  return 0;
}

std::string DumpTranscript(const ProtocolResult& result) {
  std::ostringstream out;
  out << "# protocol " << ProtocolName(result.protocol) << " n=" << result.params.n
      << " m=" << result.params.m << " p=" << result.params.modulus;
  if (result.params.seed) out << " seed=" << *result.params.seed;
  out << '\n';
  for (const auto& msg : result.transcript) {
    out << msg.round << ' ' << PartyName(msg.from) << "->" << PartyName(msg.to) << ' '
        << msg.tag << ' ' << msg.bit_cost << ' ' << msg.PayloadHex(result.widths) << '\n';
  }
  for (const auto& view : result.views) {
    out << "# randomness " << PartyName(view.party) << '\n';
    for (const auto& draw : view.randomness) {
      out << draw.label << ' ' << draw.bound << ' ' << draw.value << '\n';
    }
  }
  return out.str();
}

}  // namespace submpc
