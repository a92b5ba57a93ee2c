#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace irfeed::mir {

// Mini-IR: SSA-like registers, acyclic CFG, i32/i1 values, no memory.
// Grammar (line oriented):
//   func NAME(%p0, %p1) {
//   label:
//     %r = add i32 a, b        (add|sub|mul|and|or|xor)
//     %r = icmp slt i32 a, b   (eq|ne|slt|sgt)
//     %r = select i32 c, a, b
//     br label
//     br c, l1, l2
//     ret i32 a
//   }
// Operands are registers (%name) or integer literals. Comment lines
// start with ';' or '#'.

enum class Opcode {
  Add,
  Sub,
  Mul,
  And,
  Or,
  Xor,
  Icmp,
  Select,
  Br,
  CondBr,
  Ret,
};

enum class CmpPred { Eq, Ne, Slt, Sgt };

struct Operand {
  bool is_reg = false;
  std::string reg;
  int32_t imm = 0;

  static Operand make_reg(std::string name) {
    Operand o;
    o.is_reg = true;
    o.reg = std::move(name);
    return o;
  }
  static Operand make_imm(int32_t v) {
    Operand o;
    o.imm = v;
    return o;
  }
  bool operator==(const Operand& other) const {
    return is_reg == other.is_reg &&
           (is_reg ? reg == other.reg : imm == other.imm);
  }
};

struct Instruction {
  Opcode op = Opcode::Ret;
  std::string type = "i32";  // result type (operand type for icmp)
  std::string result;        // empty for br/condbr/ret
  CmpPred pred = CmpPred::Eq;
  std::vector<Operand> operands;     // binary: a,b; select: c,a,b; condbr: c; ret: a
  std::vector<std::string> targets;  // br: 1 label; condbr: 2 labels

  bool is_terminator() const {
    return op == Opcode::Br || op == Opcode::CondBr || op == Opcode::Ret;
  }
  bool is_pure() const { return !is_terminator(); }
};

struct Block {
  std::string label;
  std::vector<Instruction> instructions;
};

struct Function {
  std::string name;
  std::vector<std::string> params;
  std::vector<Block> blocks;
};

struct Module {
  std::vector<Function> functions;
  std::string source_text;

  int instruction_count() const;
};

struct Diagnostic {
  int line = 0;  // 0 when not tied to a source line (verifier errors)
  std::string message;

  std::string to_string() const;
};

struct ParseResult {
  std::optional<Module> module;
  Diagnostic error;

  bool ok() const { return module.has_value(); }
};

ParseResult parse_module(const std::string& text);

// Structural checks: unique labels/defs, one trailing terminator per
// block, known branch targets, acyclic CFG, no predecessor-less blocks
// beyond entry, and definite assignment of every register use.
std::optional<Diagnostic> verify(const Module& m);

std::string render(const Module& m);

struct ExecResult {
  bool ok = false;
  int32_t value = 0;
  std::string trap;
};

// Runs the first function with 32-bit wrapping arithmetic. Missing args
// default to 0; surplus args are ignored.
ExecResult interpret(const Module& m, const std::vector<int32_t>& args,
                     int64_t fuel = 1 << 20);

}  // namespace irfeed::mir
