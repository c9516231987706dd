#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pbo/cost_model.h"

namespace pbo {

enum class Encoding { twos_complement, unsigned_int };

// data: caller-visible operands and results
// junk: left dirty by the forward circuit, cleared only by its mirror
// temporary: must read zero again once the forward circuit finishes
enum class RegisterRole { data, junk, temporary };

struct Register {
  std::string label;
  int width = 1;
  Encoding input_encoding = Encoding::unsigned_int;
  Encoding output_encoding = Encoding::unsigned_int;
  RegisterRole role = RegisterRole::data;
  int offset = 0;

  std::int64_t min_value(Encoding e) const;
  std::int64_t max_value(Encoding e) const;
};

enum class GateKind { X, CX, CCX, CZ, CCZ, classically_controlled_X };

// Toffoli-class gates that open or close a logical AND. An uncompute closes it
// by measurement and a phase fix-up, so it costs no Toffoli.
enum class AndRole { none, compute, uncompute };

struct Gate {
  GateKind kind = GateKind::X;
  std::vector<int> controls;
  std::vector<bool> open;  // per control; true fires on |0>
  int target = -1;         // unused for CZ/CCZ, whose qubits all sit in controls
  AndRole role = AndRole::none;
  bool classical_bit = false;  // only for classically_controlled_X

  bool counts_as_toffoli() const;
};

class Circuit {
 public:
  int add_register(std::string label, int width, Encoding in = Encoding::unsigned_int,
                   Encoding out = Encoding::unsigned_int, RegisterRole role = RegisterRole::data);
  // Fresh zero-initialized temporaries, labelled uniquely from `stem`.
  std::vector<int> scratch(const std::string& stem, int width,
                           RegisterRole role = RegisterRole::temporary);

  const std::vector<Register>& registers() const { return registers_; }
  const Register& reg(const std::string& label) const;
  bool has_register(const std::string& label) const;
  std::vector<int> bits(const std::string& label) const;
  int bit(const std::string& label, int i) const;
  int width() const { return width_; }

  void x(int t);
  void cx(int c, int t, bool open = false);
  void ccx(int c1, int c2, int t, bool open1 = false, bool open2 = false,
           AndRole role = AndRole::none);
  void cz(int a, int b, bool open_a = false, bool open_b = false);
  void ccz(int a, int b, int c, bool open_a = false, bool open_b = false, bool open_c = false);
  void classical_x(bool value, int t);
  void push(Gate g);

  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  // Appends the mirror of gates [begin, end).
  void append_inverse(std::size_t begin, std::size_t end);

  std::int64_t toffoli_count() const;
  std::string bit_name(int q) const;
  std::string dump() const;

  CostRecord declared_cost;
  // Count quoted by the lemma the builder implements; may differ from the
  // measured count only where the construction is a reconstruction.
  std::int64_t lemma_toffolis = -1;

 private:
  void check_bits(const Gate& g) const;

  std::vector<Register> registers_;
  std::map<std::string, int> index_;
  std::vector<Gate> gates_;
  int width_ = 0;
  int scratch_counter_ = 0;
};

Circuit inverse(const Circuit& c);

struct SimResult {
  std::map<std::string, std::int64_t> values;  // decoded with each output encoding
  std::vector<std::uint8_t> bits;
  int phase = 1;
  std::int64_t toffolis = 0;  // executed Toffoli-class gates, uncomputes excluded
};

using Assignment = std::map<std::string, std::int64_t>;

// Basis-state simulation. Registers missing from `inputs` start at zero.
SimResult run(const Circuit& c, const Assignment& inputs);
// Continues from a raw bit vector, e.g. the output of a previous run.
SimResult run_bits(const Circuit& c, std::vector<std::uint8_t> bits);

// Registers: a (twos in, unsigned out), sign (junk).
Circuit build_abs(int n);
// Registers: a (twos in, unsigned |a-b| out), b (twos), sign (junk).
Circuit build_abs_diff(int n);
// Registers: a, b (unsigned), prod (n_a+n_b bits).
Circuit build_mult(int n_a, int n_b);
// Registers: a, b (unsigned), flag (junk) = [a == b].
Circuit build_is_eq(int n);
// Registers: a (unsigned, becomes a - 2^k mod 2^n), sign (junk) = [a < 2^k].
Circuit build_sub_pow2(int n, int k);
// Registers: q (unsigned, becomes q - T mod 2^q), beta (control), borrow (junk) = [q < T]
// where T = 2^(2 n_M) if beta = 0 and 2^(2 n_M + n_gamma) if beta = 1.
Circuit build_csub(int q, int n_M, int n_gamma);

// Full compute / phase / uncompute trace of the alternating-sign flag for one
// pair. Registers: q1x q1y q1z q2x q2y q2z (twos, n_g bits), m (unsigned, n_M
// bits). The run phase equals u_m(|q1 - q2|^2); every register returns to its
// input value.
Circuit build_coulomb_sign(int n_g, int n_M);

}  // namespace pbo
