#include "pbo/reversible_sim.h"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "pbo/errors.h"

namespace pbo {

std::int64_t Register::min_value(Encoding e) const {
  return e == Encoding::twos_complement ? -(std::int64_t{1} << (width - 1)) : 0;
}

std::int64_t Register::max_value(Encoding e) const {
  return e == Encoding::twos_complement ? (std::int64_t{1} << (width - 1)) - 1
                                        : (std::int64_t{1} << width) - 1;
}

bool Gate::counts_as_toffoli() const {
  return (kind == GateKind::CCX || kind == GateKind::CCZ) && role != AndRole::uncompute;
}

int Circuit::add_register(std::string label, int width, Encoding in, Encoding out,
                          RegisterRole role) {
  if (width < 1 || width > 62) throw UsageError("register width must lie in [1, 62]: " + label);
  if (index_.count(label)) throw UsageError("duplicate register label: " + label);
  Register r{label, width, in, out, role, width_};
  index_[label] = static_cast<int>(registers_.size());
  registers_.push_back(r);
  width_ += width;
  return r.offset;
}

std::vector<int> Circuit::scratch(const std::string& stem, int width, RegisterRole role) {
  std::string label = stem + "#" + std::to_string(scratch_counter_++);
  add_register(label, width, Encoding::unsigned_int, Encoding::unsigned_int, role);
  return bits(label);
}

const Register& Circuit::reg(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw UsageError("no register named " + label);
  return registers_[it->second];
}

bool Circuit::has_register(const std::string& label) const { return index_.count(label) > 0; }

std::vector<int> Circuit::bits(const std::string& label) const {
  const Register& r = reg(label);
  std::vector<int> out(r.width);
  for (int i = 0; i < r.width; ++i) out[i] = r.offset + i;
  return out;
}

int Circuit::bit(const std::string& label, int i) const {
  const Register& r = reg(label);
  if (i < 0 || i >= r.width) throw UsageError("bit index out of range for " + label);
  return r.offset + i;
}

void Circuit::check_bits(const Gate& g) const {
  std::set<int> seen;
  auto check = [&](int q) {
    if (q < 0 || q >= width_) throw UsageError("gate touches a bit outside the circuit");
    if (!seen.insert(q).second) throw UsageError("gate uses the same bit twice");
  };
  for (int q : g.controls) check(q);
  if (g.target >= 0) check(g.target);
  if (g.open.size() != g.controls.size()) throw UsageError("control polarity list mismatch");
}

void Circuit::push(Gate g) {
  check_bits(g);
  gates_.push_back(std::move(g));
}

void Circuit::x(int t) { push({GateKind::X, {}, {}, t}); }

void Circuit::cx(int c, int t, bool open) { push({GateKind::CX, {c}, {open}, t}); }

void Circuit::ccx(int c1, int c2, int t, bool open1, bool open2, AndRole role) {
  push({GateKind::CCX, {c1, c2}, {open1, open2}, t, role});
}

void Circuit::cz(int a, int b, bool open_a, bool open_b) {
  push({GateKind::CZ, {a, b}, {open_a, open_b}, -1});
}

void Circuit::ccz(int a, int b, int c, bool open_a, bool open_b, bool open_c) {
  push({GateKind::CCZ, {a, b, c}, {open_a, open_b, open_c}, -1});
}

void Circuit::classical_x(bool value, int t) {
  Gate g{GateKind::classically_controlled_X, {}, {}, t};
  g.classical_bit = value;
  push(g);
}

void Circuit::append_inverse(std::size_t begin, std::size_t end) {
  if (begin > end || end > gates_.size()) throw UsageError("bad gate range");
  for (std::size_t i = end; i-- > begin;) {
    Gate g = gates_[i];
    if (g.role == AndRole::compute)
      g.role = AndRole::uncompute;
    else if (g.role == AndRole::uncompute)
      g.role = AndRole::compute;
    gates_.push_back(g);
  }
}

std::int64_t Circuit::toffoli_count() const {
  return std::count_if(gates_.begin(), gates_.end(),
                       [](const Gate& g) { return g.counts_as_toffoli(); });
}

std::string Circuit::bit_name(int q) const {
  for (const auto& r : registers_)
    if (q >= r.offset && q < r.offset + r.width)
      return r.label + "[" + std::to_string(q - r.offset) + "]";
  throw UsageError("bit outside circuit");
}

std::string Circuit::dump() const {
  std::ostringstream os;
  for (const auto& g : gates_) {
    switch (g.kind) {
      case GateKind::X: os << "X"; break;
      case GateKind::CX: os << "CX"; break;
      case GateKind::CCX: os << "CCX"; break;
      case GateKind::CZ: os << "CZ"; break;
      case GateKind::CCZ: os << "CCZ"; break;
      case GateKind::classically_controlled_X: os << "CLX " << (g.classical_bit ? 1 : 0); break;
    }
    for (std::size_t i = 0; i < g.controls.size(); ++i)
      os << ' ' << (g.open[i] ? "!" : "") << bit_name(g.controls[i]);
    if (g.target >= 0) os << ' ' << bit_name(g.target);
    if (g.role == AndRole::uncompute) os << " @mbu";
    os << '\n';
  }
  return os.str();
}

Circuit inverse(const Circuit& c) {
  Circuit out = c;
  const std::size_t n = c.size();
  out.append_inverse(0, n);
  Circuit inv;
  for (const auto& r : c.registers())
    inv.add_register(r.label, r.width, r.output_encoding, r.input_encoding, r.role);
  for (std::size_t i = n; i < out.size(); ++i) inv.push(out.gates()[i]);
  inv.declared_cost = c.declared_cost;
  inv.declared_cost.toffolis = inv.toffoli_count();
  return inv;
}

SimResult run_bits(const Circuit& c, std::vector<std::uint8_t> bits) {
  if (static_cast<int>(bits.size()) != c.width()) throw UsageError("bit vector width mismatch");
  SimResult res;
  auto fires = [&](const Gate& g) {
    for (std::size_t i = 0; i < g.controls.size(); ++i)
      if ((bits[g.controls[i]] != 0) == g.open[i]) return false;
    return true;
  };
  for (const auto& g : c.gates()) {
    const bool on = fires(g);
    if (g.role == AndRole::compute && bits[g.target] != 0)
      throw VerificationError("AND computed onto a dirty bit " + c.bit_name(g.target));
    if (g.role == AndRole::uncompute && (bits[g.target] != 0) != on)
      throw VerificationError("AND uncompute found a wrong value on " + c.bit_name(g.target));
    if (g.counts_as_toffoli()) ++res.toffolis;
    switch (g.kind) {
      case GateKind::X: bits[g.target] ^= 1; break;
      case GateKind::CX:
      case GateKind::CCX:
        if (on) bits[g.target] ^= 1;
        break;
      case GateKind::CZ:
      case GateKind::CCZ:
        if (on) res.phase = -res.phase;
        break;
      case GateKind::classically_controlled_X:
        if (g.classical_bit) bits[g.target] ^= 1;
        break;
    }
  }
  for (const auto& r : c.registers()) {
    std::uint64_t v = 0;
    for (int i = 0; i < r.width; ++i) v |= std::uint64_t{bits[r.offset + i]} << i;
    std::int64_t s = static_cast<std::int64_t>(v);
    if (r.output_encoding == Encoding::twos_complement && (v >> (r.width - 1)) & 1)
      s -= std::int64_t{1} << r.width;
    res.values[r.label] = s;
  }
  res.bits = std::move(bits);
  return res;
}

SimResult run(const Circuit& c, const Assignment& inputs) {
  std::vector<std::uint8_t> bits(c.width(), 0);
  for (const auto& [label, value] : inputs) {
    const Register& r = c.reg(label);
    if (value < r.min_value(r.input_encoding) || value > r.max_value(r.input_encoding))
      throw UsageError("input " + std::to_string(value) + " out of range for register " + label);
    const auto u = static_cast<std::uint64_t>(value);
    for (int i = 0; i < r.width; ++i) bits[r.offset + i] = (u >> i) & 1;
  }
  return run_bits(c, std::move(bits));
}

namespace {

// A carry: constant 0, constant 1, or a bit read with the given polarity.
struct Lit {
  enum Kind { zero, one, bit } kind = zero;
  int q = -1;
  bool open = false;
  static Lit Zero() { return {}; }
  static Lit One() { return {one, -1, false}; }
  static Lit Bit(int q, bool open = false) { return {bit, q, open}; }
};

// x += y + cin over the width of x, with temporary-AND carries. y bits equal to
// -1 (or beyond y's length) read as zero. With carry_out >= 0 the final carry is
// written there (it must start clean); otherwise arithmetic is mod 2^|x|.
// Cost: one Toffoli per bit whose carry depends on two live bits.
void add_into(Circuit& c, const std::vector<int>& x, const std::vector<int>& y, Lit cin,
              int carry_out) {
  const int w = static_cast<int>(x.size());
  if (w == 0) return;
  std::vector<int> tmp;
  if (w > 1) tmp = c.scratch("carry", w - 1);
  std::vector<std::function<void()>> back;
  Lit cur = cin;
  for (int i = 0; i < w; ++i) {
    const int xi = x[i];
    const int yi = i < static_cast<int>(y.size()) ? y[i] : -1;
    const bool top = i == w - 1;
    if (top && carry_out < 0) {
      back.push_back([&c, xi, yi, cur] {
        if (yi >= 0) c.cx(yi, xi);
        if (cur.kind == Lit::one) c.x(xi);
        if (cur.kind == Lit::bit) c.cx(cur.q, xi, cur.open);
      });
      break;
    }
    const int t = top ? carry_out : tmp[i];
    const bool keep = top;
    if (cur.kind == Lit::zero && yi < 0) {
      // nothing to add, carry stays zero
      continue;
    } else if (cur.kind == Lit::zero) {
      c.ccx(xi, yi, t, false, false, AndRole::compute);
      back.push_back([&c, xi, yi, t, keep] {
        if (!keep) c.ccx(xi, yi, t, false, false, AndRole::uncompute);
        c.cx(yi, xi);
      });
    } else if (cur.kind == Lit::one && yi < 0) {
      c.cx(xi, t);
      back.push_back([&c, xi, t, keep] {
        if (!keep) c.cx(xi, t);
        c.x(xi);
      });
    } else if (cur.kind == Lit::one) {
      c.ccx(xi, yi, t, true, true, AndRole::compute);
      c.x(t);
      back.push_back([&c, xi, yi, t, keep] {
        if (!keep) {
          c.x(t);
          c.ccx(xi, yi, t, true, true, AndRole::uncompute);
        }
        c.cx(yi, xi);
        c.x(xi);
      });
    } else if (yi < 0) {
      c.ccx(xi, cur.q, t, false, cur.open, AndRole::compute);
      back.push_back([&c, xi, t, keep, cur] {
        if (!keep) c.ccx(xi, cur.q, t, false, cur.open, AndRole::uncompute);
        c.cx(cur.q, xi, cur.open);
      });
    } else {
      c.cx(cur.q, xi, cur.open);
      c.cx(cur.q, yi, cur.open);
      c.ccx(xi, yi, t, false, false, AndRole::compute);
      c.cx(cur.q, t, cur.open);
      back.push_back([&c, xi, yi, t, keep, cur] {
        if (!keep) {
          c.cx(cur.q, t, cur.open);
          c.ccx(xi, yi, t, false, false, AndRole::uncompute);
        }
        c.cx(cur.q, yi, cur.open);
        c.cx(yi, xi);
      });
    }
    cur = Lit::Bit(t);
  }
  for (auto it = back.rbegin(); it != back.rend(); ++it) (*it)();
}

std::vector<int> slice(const std::vector<int>& v, int from, int to) {
  return {v.begin() + from, v.begin() + to};
}

void abs_inplace(Circuit& c, const std::vector<int>& a, int sign) {
  const int n = static_cast<int>(a.size());
  c.cx(a[n - 1], sign);
  for (int q : a) c.cx(sign, q);
  add_into(c, slice(a, 0, n - 1), {}, Lit::Bit(sign), a[n - 1]);
}

// a <- |a - b| in n unsigned bits, sign <- [a < b].
void abs_diff_inplace(Circuit& c, const std::vector<int>& a, const std::vector<int>& b, int sign) {
  const int n = static_cast<int>(a.size());
  const int e = c.scratch("ext", 1)[0];
  const int bt = c.scratch("bext", 1)[0];
  std::vector<int> ax = a;
  ax.push_back(e);
  std::vector<int> bx = b;
  bx.push_back(bt);
  c.cx(a[n - 1], e);
  c.cx(b[n - 1], bt);
  for (int q : ax) c.x(q);
  add_into(c, ax, bx, Lit::Zero(), -1);
  for (int q : ax) c.x(q);
  c.cx(b[n - 1], bt);
  abs_inplace(c, ax, sign);
}

// r (n_a + n_b + 1 bits, all clean) <- 2ab, so r[1..] holds ab and r[0] stays 0.
void mult_into(Circuit& c, const std::vector<int>& a, const std::vector<int>& b,
               const std::vector<int>& r) {
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  const int W = na + nb + 1;
  const int a0c = c.scratch("a0", 1)[0];

  for (int i = 0; i < nb; ++i) c.cx(b[i], r[i]);
  for (int i = 0; i < nb; ++i) c.cx(a[0], r[i], true);
  add_into(c, slice(r, 0, nb), {}, Lit::One(), r[nb]);

  for (int k = 1; k < na; ++k) {
    for (int q : b) c.cx(a[k], q, true);
    add_into(c, slice(r, k, k + nb), b, Lit::Bit(a[k], true), r[k + nb]);
    for (int q : b) c.cx(a[k], q, true);
  }

  add_into(c, slice(r, na, W), b, Lit::Zero(), -1);

  for (int q : b) c.x(q);
  c.cx(a[0], a0c);
  std::vector<int> y = b;
  y.insert(y.end(), a.begin(), a.end());
  add_into(c, r, y, Lit::Bit(a0c, true), -1);
  c.cx(a[0], a0c);
  for (int q : b) c.x(q);

  c.x(r[W - 1]);
}

void is_eq_into(Circuit& c, const std::vector<int>& a, const std::vector<int>& b, int flag) {
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i) c.cx(a[i], b[i]);
  if (n == 1) {
    c.cx(b[0], flag, true);
  } else {
    std::vector<int> t;
    if (n > 2) t = c.scratch("and", n - 2);
    int prev = b[0];
    bool prev_open = true;
    for (int i = 1; i < n; ++i) {
      const int tgt = i == n - 1 ? flag : t[i - 1];
      c.ccx(prev, b[i], tgt, prev_open, true, AndRole::compute);
      prev = tgt;
      prev_open = false;
    }
    for (int i = n - 2; i >= 1; --i) {
      const int p = i == 1 ? b[0] : t[i - 2];
      c.ccx(p, b[i], t[i - 1], i == 1, true, AndRole::uncompute);
    }
  }
  for (int i = 0; i < n; ++i) c.cx(a[i], b[i]);
}

// a <- a - 2^k, sign <- [a < 2^k].
void sub_pow2_inplace(Circuit& c, const std::vector<int>& a, int k, int sign) {
  const int n = static_cast<int>(a.size());
  const auto high = slice(a, k, n);
  for (int q : high) c.x(q);
  add_into(c, high, {}, Lit::One(), sign);
  for (int q : high) c.x(q);
}

}  // namespace

Circuit build_abs(int n) {
  if (n < 2 || n > 62) throw UsageError("build_abs needs 2 <= n <= 62");
  Circuit c;
  c.add_register("a", n, Encoding::twos_complement, Encoding::unsigned_int);
  c.add_register("sign", 1, Encoding::unsigned_int, Encoding::unsigned_int, RegisterRole::junk);
  abs_inplace(c, c.bits("a"), c.bit("sign", 0));
  c.declared_cost = primitive_cost(PrimitiveKind::Abs, {n});
  c.lemma_toffolis = c.declared_cost.toffolis;
  return c;
}

Circuit build_abs_diff(int n) {
  if (n < 2 || n > 60) throw UsageError("build_abs_diff needs 2 <= n <= 60");
  Circuit c;
  c.add_register("a", n, Encoding::twos_complement, Encoding::unsigned_int);
  c.add_register("b", n, Encoding::twos_complement, Encoding::twos_complement);
  c.add_register("sign", 1, Encoding::unsigned_int, Encoding::unsigned_int, RegisterRole::junk);
  abs_diff_inplace(c, c.bits("a"), c.bits("b"), c.bit("sign", 0));
  c.declared_cost = primitive_cost(PrimitiveKind::AbsDiff, {n});
  c.lemma_toffolis = c.declared_cost.toffolis;
  return c;
}

Circuit build_mult(int n_a, int n_b) {
  if (n_a < 2 || n_a > n_b) throw UsageError("build_mult needs 2 <= n_a <= n_b");
  if (n_a + n_b > 60) throw UsageError("build_mult product too wide");
  Circuit c;
  c.add_register("a", n_a);
  c.add_register("b", n_b);
  const int r0 = c.add_register("r0", 1, Encoding::unsigned_int, Encoding::unsigned_int,
                                RegisterRole::temporary);
  c.add_register("prod", n_a + n_b);
  std::vector<int> r{r0};
  for (int q : c.bits("prod")) r.push_back(q);
  mult_into(c, c.bits("a"), c.bits("b"), r);
  const CostRecord lemma = primitive_cost(PrimitiveKind::Mult, {n_a, n_b});
  c.lemma_toffolis = lemma.toffolis;
  c.declared_cost = lemma;
  c.declared_cost.toffolis = c.toffoli_count();
  return c;
}

Circuit build_is_eq(int n) {
  if (n < 1 || n > 62) throw UsageError("build_is_eq needs 1 <= n <= 62");
  Circuit c;
  c.add_register("a", n);
  c.add_register("b", n);
  c.add_register("flag", 1, Encoding::unsigned_int, Encoding::unsigned_int, RegisterRole::junk);
  is_eq_into(c, c.bits("a"), c.bits("b"), c.bit("flag", 0));
  c.declared_cost = primitive_cost(PrimitiveKind::IsEq, {n});
  c.lemma_toffolis = c.declared_cost.toffolis;
  return c;
}

Circuit build_sub_pow2(int n, int k) {
  if (n < 1 || n > 62 || k < 0 || k >= n) throw UsageError("build_sub_pow2 needs 0 <= k < n");
  Circuit c;
  c.add_register("a", n);
  c.add_register("sign", 1, Encoding::unsigned_int, Encoding::unsigned_int, RegisterRole::junk);
  sub_pow2_inplace(c, c.bits("a"), k, c.bit("sign", 0));
  c.declared_cost = {n - k - 1, 0, 1, n - k - 1};
  c.lemma_toffolis = c.declared_cost.toffolis;
  return c;
}

Circuit build_csub(int q, int n_M, int n_gamma) {
  if (n_M < 0 || n_gamma < 1)
    throw UsageError("build_csub needs n_M >= 0 and n_gamma >= 1 so both constants have weight one");
  if (2 * n_M + n_gamma >= q)
    throw UsageError("build_csub: 2^(2 n_M + n_gamma) must fit below 2^q");
  if (q > 62) throw UsageError("build_csub register too wide");
  Circuit c;
  c.add_register("q", q);
  c.add_register("beta", 1);
  c.add_register("borrow", 1, Encoding::unsigned_int, Encoding::unsigned_int, RegisterRole::junk);
  const auto Q = c.bits("q");
  const int beta = c.bit("beta", 0);
  const int nbeta = c.scratch("nbeta", 1)[0];
  const int bcopy = c.scratch("beta", 1)[0];
  const auto window = slice(Q, 2 * n_M, q);
  std::vector<int> y(window.size(), -1);
  y[0] = nbeta;
  y[n_gamma] = bcopy;
  c.cx(beta, nbeta);
  c.x(nbeta);
  c.cx(beta, bcopy);
  for (int b : window) c.x(b);
  add_into(c, window, y, Lit::Zero(), c.bit("borrow", 0));
  for (int b : window) c.x(b);
  c.cx(beta, bcopy);
  c.x(nbeta);
  c.cx(beta, nbeta);
  const CostRecord lemma = primitive_cost(PrimitiveKind::CSub, {q});
  c.lemma_toffolis = lemma.toffolis;
  c.declared_cost = lemma;
  c.declared_cost.toffolis = c.toffoli_count();
  return c;
}

Circuit build_coulomb_sign(int n_g, int n_M) {
  if (n_g < 2) throw UsageError("build_coulomb_sign needs n_g >= 2");
  if (n_M < n_g + 1) throw UsageError("build_coulomb_sign assumes n_M >= n_g + 1");
  if (2 * n_M + 2 * n_g + 2 > 60) throw UsageError("build_coulomb_sign widths too large");
  Circuit c;
  const char* axes[] = {"x", "y", "z"};
  for (const char* who : {"q1", "q2"})
    for (const char* ax : axes)
      c.add_register(std::string(who) + ax, n_g, Encoding::twos_complement,
                     Encoding::twos_complement);
  c.add_register("m", n_M);

  std::vector<std::vector<int>> squares;
  for (const char* ax : axes) {
    const auto d = c.bits(std::string("q1") + ax);
    const int s = c.scratch("dsign", 1, RegisterRole::junk)[0];
    abs_diff_inplace(c, d, c.bits(std::string("q2") + ax), s);
    const auto cp = c.scratch("dcopy", n_g, RegisterRole::junk);
    for (int i = 0; i < n_g; ++i) c.cx(d[i], cp[i]);
    const auto r = c.scratch("dsq", 2 * n_g + 1, RegisterRole::junk);
    mult_into(c, d, cp, r);
    squares.push_back(slice(r, 1, 2 * n_g + 1));
  }
  const auto sum = c.scratch("r2", 2 * n_g + 2, RegisterRole::junk);
  for (int i = 0; i < 2 * n_g; ++i) c.cx(squares[0][i], sum[i]);
  add_into(c, sum, squares[1], Lit::Zero(), -1);
  add_into(c, sum, squares[2], Lit::Zero(), -1);

  const auto m = c.bits("m");
  const auto mc = c.scratch("mcopy", n_M, RegisterRole::junk);
  for (int i = 0; i < n_M; ++i) c.cx(m[i], mc[i]);
  const auto msq = c.scratch("msq", 2 * n_M + 1, RegisterRole::junk);
  mult_into(c, m, mc, msq);

  const int pw = 2 * n_M + 2 * n_g + 2;
  const auto prod = c.scratch("prod", pw + 1, RegisterRole::junk);
  mult_into(c, sum, slice(msq, 1, 2 * n_M + 1), prod);
  const int sign = c.scratch("cmp", 1, RegisterRole::junk)[0];
  sub_pow2_inplace(c, slice(prod, 1, pw + 1), 2 * n_M, sign);

  const std::size_t forward = c.size();
  // Phase -1 exactly when m is odd and m^2 x >= M^2.
  c.cz(m[0], sign, false, true);
  c.append_inverse(0, forward);
  c.declared_cost.toffolis = c.toffoli_count();
  if (n_M > n_g + 1)
    c.lemma_toffolis = alternating_sign_cost(n_g, n_M, SignVariant::plain).toffolis;
  return c;
}

}  // namespace pbo
