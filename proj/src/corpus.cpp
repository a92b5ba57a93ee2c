#include "irfeed/corpus.hpp"

#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#include "irfeed/mini_ir.hpp"
#include "irfeed/util.hpp"

namespace irfeed {

namespace {

struct Expr {
  std::string op;  // "add" .. "xor"
  std::string a, b;
};

struct Gen {
  std::mt19937_64 rng;
  const CorpusSpec& spec;
  std::ostringstream out;
  int next_temp = 0;

  std::vector<std::string> entry32, entry1;  // defs that dominate everything
  std::vector<std::string> cur32, cur1;      // defs in the current block
  std::vector<Expr> entry_exprs, cur_exprs;  // duplication candidates
  bool in_entry = true;

  explicit Gen(uint64_t seed, const CorpusSpec& s) : rng(seed), spec(s) {}

  int uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng); }

  std::string fresh() { return "%t" + std::to_string(next_temp++); }

  void define32(const std::string& r) {
    (in_entry ? entry32 : cur32).push_back(r);
  }
  void define1(const std::string& r) {
    (in_entry ? entry1 : cur1).push_back(r);
  }

  std::vector<std::string> avail32() const {
    std::vector<std::string> v = entry32;
    if (!in_entry) v.insert(v.end(), cur32.begin(), cur32.end());
    return v;
  }
  std::vector<std::string> avail1() const {
    std::vector<std::string> v = entry1;
    if (!in_entry) v.insert(v.end(), cur1.begin(), cur1.end());
    return v;
  }

  std::string pick(const std::vector<std::string>& regs) {
    return regs[uniform(0, static_cast<int>(regs.size()) - 1)];
  }

  std::string operand32() {
    auto regs = avail32();
    if (!regs.empty() && chance(0.6)) return pick(regs);
    // small constants, biased toward 0 and 1 so identities show up
    static const int pool[] = {0, 0, 1, 1, 2, 3, 5, 7, -1, -3, 8};
    return std::to_string(pool[uniform(0, 10)]);
  }

  std::string binop_name() {
    static const char* ops[] = {"add", "sub", "mul", "and", "or", "xor"};
    return ops[uniform(0, 5)];
  }

  void note_expr(const std::string& op, const std::string& a,
                 const std::string& b) {
    (in_entry ? entry_exprs : cur_exprs).push_back({op, a, b});
  }

  void emit_binary(const std::string& op, const std::string& a,
                   const std::string& b) {
    const std::string r = fresh();
    out << "  " << r << " = " << op << " i32 " << a << ", " << b << "\n";
    define32(r);
    note_expr(op, a, b);
  }

  void emit_icmp(const std::string& a, const std::string& b) {
    static const char* preds[] = {"eq", "ne", "slt", "sgt"};
    const std::string r = fresh();
    out << "  " << r << " = icmp " << preds[uniform(0, 3)] << " i32 " << a
        << ", " << b << "\n";
    define1(r);
  }

  void emit_body_instr() {
    const int kind = uniform(0, 9);
    if (kind <= 3) {  // random binary
      emit_binary(binop_name(), operand32(), operand32());
    } else if (kind == 4) {  // constant-constant (constfold fodder)
      emit_binary(binop_name(), std::to_string(uniform(-4, 9)),
                  std::to_string(uniform(-4, 9)));
    } else if (kind == 5 || kind == 6) {  // algebraic identity (peephole fodder)
      auto regs = avail32();
      if (regs.empty()) {
        emit_binary(binop_name(), operand32(), operand32());
        return;
      }
      const std::string x = pick(regs);
      switch (uniform(0, 4)) {
        case 0: emit_binary("add", x, "0"); break;
        case 1: emit_binary("sub", x, "0"); break;
        case 2: emit_binary("mul", x, "1"); break;
        case 3: emit_binary("mul", x, "0"); break;
        case 4: emit_binary("xor", x, x); break;
      }
    } else if (kind == 7) {  // duplicate an earlier expression (cse fodder)
      const auto& pool = !cur_exprs.empty() && chance(0.5) ? cur_exprs : entry_exprs;
      if (pool.empty()) {
        emit_binary(binop_name(), operand32(), operand32());
        return;
      }
      const Expr& e = pool[uniform(0, static_cast<int>(pool.size()) - 1)];
      emit_binary(e.op, e.a, e.b);
    } else if (kind == 8) {
      emit_icmp(operand32(), operand32());
    } else {  // select
      auto conds = avail1();
      const std::string c = conds.empty() ? std::to_string(uniform(0, 1)) : pick(conds);
      const std::string r = fresh();
      out << "  " << r << " = select i32 " << c << ", " << operand32() << ", "
          << operand32() << "\n";
      define32(r);
    }
  }

  // A branch whose condition folds to a constant only after peephole
  // (mul-by-zero) feeds constfold; the reference pipeline's fixed order
  // misses it, so searched orderings can win.
  void emit_foldable_branch_cond(std::string& cond_out) {
    auto regs = avail32();
    const std::string x = regs.empty() ? "3" : pick(regs);
    const std::string z = fresh();
    out << "  " << z << " = mul i32 " << x << ", 0\n";
    define32(z);
    const std::string c = fresh();
    out << "  " << c << " = icmp slt i32 " << z << ", 1\n";
    define1(c);
    cond_out = c;
  }
};

}  // namespace

std::string generate_program(uint64_t seed, const CorpusSpec& spec) {
  Gen g(seed, spec);
  const int nblocks = g.uniform(1, spec.max_blocks);
  const int nparams = g.uniform(1, 2);

  g.out << "func f(";
  for (int i = 0; i < nparams; ++i) {
    if (i) g.out << ", ";
    g.out << "%p" << i;
    g.entry32.push_back("%p" + std::to_string(i));
  }
  g.out << ") {\n";

  for (int b = 0; b < nblocks; ++b) {
    g.in_entry = b == 0;
    g.cur32.clear();
    g.cur1.clear();
    g.cur_exprs.clear();
    g.out << (b == 0 ? "entry" : "b" + std::to_string(b)) << ":\n";

    const int body = g.uniform(b == 0 ? 2 : 1, spec.max_body_instrs);
    for (int k = 0; k < body; ++k) g.emit_body_instr();

    if (b == nblocks - 1) {
      auto regs = g.avail32();
      g.out << "  ret i32 " << (regs.empty() ? "0" : g.pick(regs)) << "\n";
    } else {
      auto label = [&](int i) {
        return i == 0 ? std::string("entry") : "b" + std::to_string(i);
      };
      const bool statically_foldable = g.chance(0.35);
      if (!statically_foldable && g.chance(0.45)) {
        g.out << "  br " << label(b + 1) << "\n";
      } else {
        std::string cond;
        if (statically_foldable) {
          g.emit_foldable_branch_cond(cond);
        } else {
          auto conds = g.avail1();
          if (conds.empty()) {
            g.emit_icmp(g.operand32(), g.operand32());
            conds = g.avail1();
          }
          cond = g.pick(conds);
        }
        int other = g.uniform(b + 1, nblocks - 1);
        std::string l1 = label(b + 1), l2 = label(other);
        if (!statically_foldable && g.chance(0.5)) std::swap(l1, l2);
        g.out << "  br " << cond << ", " << l1 << ", " << l2 << "\n";
      }
    }
  }
  g.out << "}\n";

  const std::string text = g.out.str();
  auto parsed = mir::parse_module(text);
  if (!parsed.ok()) {
    throw std::logic_error("generated program failed verification: " +
                           parsed.error.to_string() + "\n" + text);
  }
  return text;
}

std::vector<CorpusExample> generate_corpus(const CorpusSpec& spec) {
  std::vector<CorpusExample> corpus;
  corpus.reserve(spec.size);
  for (int i = 0; i < spec.size; ++i) {
    char id[32];
    std::snprintf(id, sizeof(id), "gen-%06d", i);
    corpus.push_back(
        {id, generate_program(splitmix64(spec.seed ^ (i + 1)), spec)});
  }
  return corpus;
}

}  // namespace irfeed
