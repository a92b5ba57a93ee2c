#include "irfeed/passes.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace irfeed::mir {

namespace {

void replace_uses(Function& f, const std::string& reg, const Operand& rep) {
  for (auto& b : f.blocks)
    for (auto& ins : b.instructions)
      for (auto& o : ins.operands)
        if (o.is_reg && o.reg == reg) o = rep;
}

int32_t wrap_add(int32_t a, int32_t b) {
  return static_cast<int32_t>(static_cast<uint32_t>(a) + static_cast<uint32_t>(b));
}
int32_t wrap_sub(int32_t a, int32_t b) {
  return static_cast<int32_t>(static_cast<uint32_t>(a) - static_cast<uint32_t>(b));
}
int32_t wrap_mul(int32_t a, int32_t b) {
  return static_cast<int32_t>(static_cast<uint32_t>(a) * static_cast<uint32_t>(b));
}

std::optional<int32_t> eval_pure(const Instruction& ins) {
  for (const auto& o : ins.operands)
    if (o.is_reg) return std::nullopt;
  auto v = [&](size_t i) { return ins.operands[i].imm; };
  switch (ins.op) {
    case Opcode::Add: return wrap_add(v(0), v(1));
    case Opcode::Sub: return wrap_sub(v(0), v(1));
    case Opcode::Mul: return wrap_mul(v(0), v(1));
    case Opcode::And: return v(0) & v(1);
    case Opcode::Or: return v(0) | v(1);
    case Opcode::Xor: return v(0) ^ v(1);
    case Opcode::Icmp:
      switch (ins.pred) {
        case CmpPred::Eq: return v(0) == v(1) ? 1 : 0;
        case CmpPred::Ne: return v(0) != v(1) ? 1 : 0;
        case CmpPred::Slt: return v(0) < v(1) ? 1 : 0;
        case CmpPred::Sgt: return v(0) > v(1) ? 1 : 0;
      }
      return std::nullopt;
    case Opcode::Select: return v(0) != 0 ? v(1) : v(2);
    default: return std::nullopt;
  }
}

void const_fold(Function& f) {
  std::unordered_set<std::string> folded;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& b : f.blocks) {
      for (auto& ins : b.instructions) {
        if (!ins.is_pure() || ins.result.empty()) continue;
        if (folded.count(ins.result)) continue;
        if (auto v = eval_pure(ins)) {
          replace_uses(f, ins.result, Operand::make_imm(*v));
          folded.insert(ins.result);
          changed = true;
        }
      }
    }
  }
}

void peephole(Function& f) {
  for (auto& b : f.blocks) {
    for (auto& ins : b.instructions) {
      if (!ins.is_pure() || ins.result.empty()) continue;
      const auto& ops = ins.operands;
      auto imm_is = [&](size_t i, int32_t v) {
        return !ops[i].is_reg && ops[i].imm == v;
      };
      auto same_reg = [&] {
        return ops[0].is_reg && ops[1].is_reg && ops[0].reg == ops[1].reg;
      };
      std::optional<Operand> rep;
      switch (ins.op) {
        case Opcode::Add:
          if (imm_is(1, 0)) rep = ops[0];
          else if (imm_is(0, 0)) rep = ops[1];
          break;
        case Opcode::Sub:
          if (imm_is(1, 0)) rep = ops[0];
          break;
        case Opcode::Mul:
          if (imm_is(1, 1)) rep = ops[0];
          else if (imm_is(0, 1)) rep = ops[1];
          else if (imm_is(0, 0) || imm_is(1, 0)) rep = Operand::make_imm(0);
          break;
        case Opcode::Xor:
          if (same_reg()) rep = Operand::make_imm(0);
          break;
        case Opcode::And:
        case Opcode::Or:
          if (same_reg()) rep = ops[0];
          break;
        case Opcode::Select:
          if (!ops[0].is_reg) rep = ops[0].imm != 0 ? ops[1] : ops[2];
          break;
        default:
          break;
      }
      if (rep) replace_uses(f, ins.result, *rep);
    }
  }
}

std::string instr_key(const Instruction& ins) {
  std::string key = std::to_string(static_cast<int>(ins.op)) + "|" + ins.type +
                    "|" + std::to_string(static_cast<int>(ins.pred));
  for (const auto& o : ins.operands) {
    key += o.is_reg ? "|r" + o.reg : "|i" + std::to_string(o.imm);
  }
  return key;
}

void cse(Function& f) {
  for (auto& b : f.blocks) {
    std::unordered_map<std::string, std::string> seen;  // key -> result reg
    for (auto& ins : b.instructions) {
      if (!ins.is_pure() || ins.result.empty()) continue;
      const std::string key = instr_key(ins);
      auto it = seen.find(key);
      if (it != seen.end()) {
        replace_uses(f, ins.result, Operand::make_reg(it->second));
      } else {
        seen.emplace(key, ins.result);
      }
    }
  }
}

void dce(Function& f) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::unordered_set<std::string> used;
    for (const auto& b : f.blocks)
      for (const auto& ins : b.instructions)
        for (const auto& o : ins.operands)
          if (o.is_reg) used.insert(o.reg);
    for (auto& b : f.blocks) {
      auto it = std::remove_if(
          b.instructions.begin(), b.instructions.end(),
          [&](const Instruction& ins) {
            return ins.is_pure() && !ins.result.empty() && !used.count(ins.result);
          });
      if (it != b.instructions.end()) {
        b.instructions.erase(it, b.instructions.end());
        changed = true;
      }
    }
  }
}

void simplify_cfg(Function& f) {
  bool changed = true;
  while (changed) {
    changed = false;

    // Fold conditional branches on constant conditions.
    for (auto& b : f.blocks) {
      Instruction& term = b.instructions.back();
      if (term.op == Opcode::CondBr && !term.operands[0].is_reg) {
        const std::string target =
            term.operands[0].imm != 0 ? term.targets[0] : term.targets[1];
        term = Instruction{};
        term.op = Opcode::Br;
        term.targets = {target};
        changed = true;
      }
    }

    // Drop blocks unreachable from entry.
    {
      std::unordered_map<std::string, size_t> index;
      for (size_t i = 0; i < f.blocks.size(); ++i) index[f.blocks[i].label] = i;
      std::vector<bool> reach(f.blocks.size(), false);
      std::vector<size_t> stack{0};
      reach[0] = true;
      while (!stack.empty()) {
        size_t n = stack.back();
        stack.pop_back();
        for (const auto& t : f.blocks[n].instructions.back().targets) {
          size_t s = index.at(t);
          if (!reach[s]) {
            reach[s] = true;
            stack.push_back(s);
          }
        }
      }
      std::vector<Block> kept;
      for (size_t i = 0; i < f.blocks.size(); ++i)
        if (reach[i]) kept.push_back(std::move(f.blocks[i]));
      if (kept.size() != f.blocks.size()) changed = true;
      f.blocks = std::move(kept);
    }

    // Merge A -> B where A ends in an unconditional br and B's only
    // predecessor is A.
    {
      std::unordered_map<std::string, int> pred_count;
      for (const auto& b : f.blocks)
        for (const auto& t : b.instructions.back().targets) ++pred_count[t];
      for (size_t i = 0; i < f.blocks.size(); ++i) {
        Instruction& term = f.blocks[i].instructions.back();
        if (term.op != Opcode::Br) continue;
        const std::string target = term.targets[0];
        if (target == f.blocks.front().label) continue;
        if (pred_count[target] != 1) continue;
        size_t j = 0;
        while (j < f.blocks.size() && f.blocks[j].label != target) ++j;
        if (j >= f.blocks.size() || j == i) continue;
        auto& dst = f.blocks[i].instructions;
        dst.pop_back();
        for (auto& ins : f.blocks[j].instructions) dst.push_back(std::move(ins));
        f.blocks.erase(f.blocks.begin() + j);
        changed = true;
        break;  // indices invalidated; restart the sweep
      }
    }
  }
}

}  // namespace

std::optional<PassName> pass_from_name(const std::string& name) {
  if (name == "constfold") return PassName::ConstFold;
  if (name == "peephole") return PassName::Peephole;
  if (name == "cse") return PassName::Cse;
  if (name == "simplifycfg") return PassName::SimplifyCfg;
  if (name == "dce") return PassName::Dce;
  return std::nullopt;
}

const char* pass_name(PassName p) {
  switch (p) {
    case PassName::ConstFold: return "constfold";
    case PassName::Peephole: return "peephole";
    case PassName::Cse: return "cse";
    case PassName::SimplifyCfg: return "simplifycfg";
    case PassName::Dce: return "dce";
  }
  return "?";
}

const std::vector<std::string>& pass_catalog_names() {
  static const std::vector<std::string> names = {"constfold", "peephole", "cse",
                                                 "simplifycfg", "dce"};
  return names;
}

const std::vector<std::string>& reference_oz_pipeline() {
  static const std::vector<std::string> pipeline = {
      "constfold", "peephole", "cse", "dce", "simplifycfg", "dce"};
  return pipeline;
}

Module apply_pass(const Module& m, PassName pass) {
  Module out = m;
  for (auto& f : out.functions) {
    switch (pass) {
      case PassName::ConstFold: const_fold(f); break;
      case PassName::Peephole: peephole(f); break;
      case PassName::Cse: cse(f); break;
      case PassName::SimplifyCfg: simplify_cfg(f); break;
      case PassName::Dce: dce(f); break;
    }
  }
  out.source_text = render(out);
  if (auto diag = verify(out)) {
    throw std::logic_error(std::string("pass ") + pass_name(pass) +
                           " broke verification: " + diag->message);
  }
  return out;
}

PipelineResult apply_pipeline(const Module& m,
                              const std::vector<std::string>& passes) {
  PipelineResult result;
  Module cur = m;
  for (const auto& name : passes) {
    auto p = pass_from_name(name);
    if (!p) {
      result.error.message = "unknown pass: " + name;
      return result;
    }
    cur = apply_pass(cur, *p);
  }
  result.module = std::move(cur);
  return result;
}

Module reference_oz(const Module& m) {
  auto r = apply_pipeline(m, reference_oz_pipeline());
  return *r.module;
}

}  // namespace irfeed::mir
