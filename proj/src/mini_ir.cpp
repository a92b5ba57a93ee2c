#include "irfeed/mini_ir.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace irfeed::mir {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

bool is_identifier(const std::string& s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), is_name_char);
}

std::optional<Opcode> binary_opcode(const std::string& s) {
  if (s == "add") return Opcode::Add;
  if (s == "sub") return Opcode::Sub;
  if (s == "mul") return Opcode::Mul;
  if (s == "and") return Opcode::And;
  if (s == "or") return Opcode::Or;
  if (s == "xor") return Opcode::Xor;
  return std::nullopt;
}

std::optional<CmpPred> cmp_pred(const std::string& s) {
  if (s == "eq") return CmpPred::Eq;
  if (s == "ne") return CmpPred::Ne;
  if (s == "slt") return CmpPred::Slt;
  if (s == "sgt") return CmpPred::Sgt;
  return std::nullopt;
}

const char* opcode_name(Opcode op) {
  switch (op) {
    case Opcode::Add: return "add";
    case Opcode::Sub: return "sub";
    case Opcode::Mul: return "mul";
    case Opcode::And: return "and";
    case Opcode::Or: return "or";
    case Opcode::Xor: return "xor";
    case Opcode::Icmp: return "icmp";
    case Opcode::Select: return "select";
    case Opcode::Br: return "br";
    case Opcode::CondBr: return "br";
    case Opcode::Ret: return "ret";
  }
  return "?";
}

const char* pred_name(CmpPred p) {
  switch (p) {
    case CmpPred::Eq: return "eq";
    case CmpPred::Ne: return "ne";
    case CmpPred::Slt: return "slt";
    case CmpPred::Sgt: return "sgt";
  }
  return "?";
}

// Per-line token scanner for the parser; keeps punctuation as
// single-char tokens and %names atomic, same splitting rule as
// irfeed::tokenize.
std::vector<std::string> scan_line(const std::string& line) {
  std::vector<std::string> out;
  size_t i = 0;
  const size_t n = line.size();
  auto is_punct = [](char c) {
    return c == ',' || c == '(' || c == ')' || c == '{' || c == '}' ||
           c == '=' || c == ':';
  };
  while (i < n) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if ((c == '%' || c == '@') && i + 1 < n && is_name_char(line[i + 1])) {
      size_t j = i + 1;
      while (j < n && is_name_char(line[j])) ++j;
      out.push_back(line.substr(i, j - i));
      i = j;
      continue;
    }
    if (is_punct(c) || c == '%' || c == '@') {
      out.push_back(std::string(1, c));
      ++i;
      continue;
    }
    size_t j = i;
    while (j < n && !std::isspace(static_cast<unsigned char>(line[j])) &&
           !is_punct(line[j]) && line[j] != '%' && line[j] != '@') {
      ++j;
    }
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

struct LineParser {
  const std::vector<std::string>& toks;
  size_t pos = 0;
  int line_no;
  std::string err;

  LineParser(const std::vector<std::string>& t, int line) : toks(t), line_no(line) {}

  bool done() const { return pos >= toks.size(); }
  const std::string& peek() const {
    static const std::string empty;
    return done() ? empty : toks[pos];
  }
  bool accept(const std::string& tok) {
    if (!done() && toks[pos] == tok) {
      ++pos;
      return true;
    }
    return false;
  }
  bool expect(const std::string& tok) {
    if (accept(tok)) return true;
    err = "expected '" + tok + "'";
    return false;
  }
  std::optional<std::string> take() {
    if (done()) return std::nullopt;
    return toks[pos++];
  }
};

std::optional<Operand> parse_operand(LineParser& p) {
  auto tok = p.take();
  if (!tok) {
    p.err = "expected operand";
    return std::nullopt;
  }
  if ((*tok)[0] == '%') {
    if (tok->size() < 2) {
      p.err = "bad register name";
      return std::nullopt;
    }
    return Operand::make_reg(*tok);
  }
  try {
    size_t consumed = 0;
    long long v = std::stoll(*tok, &consumed);
    if (consumed != tok->size()) throw std::invalid_argument("trailing");
    return Operand::make_imm(static_cast<int32_t>(v));
  } catch (const std::exception&) {
    p.err = "bad operand '" + *tok + "'";
    return std::nullopt;
  }
}

bool parse_type(LineParser& p, std::string& out) {
  auto tok = p.take();
  if (!tok || (*tok != "i32" && *tok != "i1")) {
    p.err = "expected type i32 or i1";
    return false;
  }
  out = *tok;
  return true;
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

}  // namespace

int Module::instruction_count() const {
  int n = 0;
  for (const auto& f : functions)
    for (const auto& b : f.blocks) n += static_cast<int>(b.instructions.size());
  return n;
}

std::string Diagnostic::to_string() const {
  if (line > 0) return "line " + std::to_string(line) + ": " + message;
  return message;
}

ParseResult parse_module(const std::string& text) {
  ParseResult result;
  Module m;
  m.source_text = text;

  Function* cur_func = nullptr;
  Block* cur_block = nullptr;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  auto fail = [&](int line, std::string msg) {
    ParseResult r;
    r.error = {line, std::move(msg)};
    return r;
  };

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == ';' || line[0] == '#') continue;

    auto toks = scan_line(line);
    LineParser p(toks, line_no);

    if (p.accept("func")) {
      if (cur_func) return fail(line_no, "nested function definition");
      Function f;
      auto name = p.take();
      if (!name || !is_identifier(*name))
        return fail(line_no, "expected function name");
      f.name = *name;
      if (!p.expect("(")) return fail(line_no, p.err);
      if (!p.accept(")")) {
        while (true) {
          auto param = p.take();
          if (!param || (*param)[0] != '%')
            return fail(line_no, "expected %param");
          f.params.push_back(*param);
          if (p.accept(")")) break;
          if (!p.expect(",")) return fail(line_no, p.err);
        }
      }
      if (!p.expect("{")) return fail(line_no, p.err);
      if (!p.done()) return fail(line_no, "trailing tokens after '{'");
      m.functions.push_back(std::move(f));
      cur_func = &m.functions.back();
      cur_block = nullptr;
      continue;
    }

    if (line == "}") {
      if (!cur_func) return fail(line_no, "'}' outside function");
      cur_func = nullptr;
      cur_block = nullptr;
      continue;
    }

    if (!cur_func) return fail(line_no, "instruction outside function");

    // Label line: NAME ':' and nothing else.
    if (toks.size() == 2 && toks[1] == ":" && is_identifier(toks[0])) {
      cur_func->blocks.push_back(Block{toks[0], {}});
      cur_block = &cur_func->blocks.back();
      continue;
    }

    if (!cur_block) return fail(line_no, "instruction before first block label");

    Instruction ins;
    if (p.accept("br")) {
      auto first = p.take();
      if (!first) return fail(line_no, "expected branch target or condition");
      if (p.done()) {
        if (!is_identifier(*first)) return fail(line_no, "bad branch target");
        ins.op = Opcode::Br;
        ins.targets.push_back(*first);
      } else {
        ins.op = Opcode::CondBr;
        // Re-parse the first token as an operand.
        if ((*first)[0] == '%') {
          ins.operands.push_back(Operand::make_reg(*first));
        } else {
          try {
            ins.operands.push_back(Operand::make_imm(
                static_cast<int32_t>(std::stoll(*first))));
          } catch (const std::exception&) {
            return fail(line_no, "bad branch condition '" + *first + "'");
          }
        }
        if (!p.expect(",")) return fail(line_no, p.err);
        auto l1 = p.take();
        if (!l1 || !is_identifier(*l1)) return fail(line_no, "bad branch target");
        if (!p.expect(",")) return fail(line_no, p.err);
        auto l2 = p.take();
        if (!l2 || !is_identifier(*l2)) return fail(line_no, "bad branch target");
        ins.targets = {*l1, *l2};
      }
    } else if (p.accept("ret")) {
      ins.op = Opcode::Ret;
      if (!parse_type(p, ins.type)) return fail(line_no, p.err);
      auto opnd = parse_operand(p);
      if (!opnd) return fail(line_no, p.err);
      ins.operands.push_back(*opnd);
    } else {
      auto dst = p.take();
      if (!dst || (*dst)[0] != '%' || dst->size() < 2)
        return fail(line_no, "expected instruction");
      ins.result = *dst;
      if (!p.expect("=")) return fail(line_no, p.err);
      auto op = p.take();
      if (!op) return fail(line_no, "expected opcode");
      if (auto bin = binary_opcode(*op)) {
        ins.op = *bin;
        if (!parse_type(p, ins.type)) return fail(line_no, p.err);
        auto a = parse_operand(p);
        if (!a) return fail(line_no, p.err);
        if (!p.expect(",")) return fail(line_no, p.err);
        auto b = parse_operand(p);
        if (!b) return fail(line_no, p.err);
        ins.operands = {*a, *b};
      } else if (*op == "icmp") {
        ins.op = Opcode::Icmp;
        auto pr = p.take();
        if (!pr) return fail(line_no, "expected icmp predicate");
        auto pred = cmp_pred(*pr);
        if (!pred) return fail(line_no, "unknown icmp predicate '" + *pr + "'");
        ins.pred = *pred;
        if (!parse_type(p, ins.type)) return fail(line_no, p.err);
        auto a = parse_operand(p);
        if (!a) return fail(line_no, p.err);
        if (!p.expect(",")) return fail(line_no, p.err);
        auto b = parse_operand(p);
        if (!b) return fail(line_no, p.err);
        ins.operands = {*a, *b};
      } else if (*op == "select") {
        ins.op = Opcode::Select;
        if (!parse_type(p, ins.type)) return fail(line_no, p.err);
        auto c = parse_operand(p);
        if (!c) return fail(line_no, p.err);
        if (!p.expect(",")) return fail(line_no, p.err);
        auto a = parse_operand(p);
        if (!a) return fail(line_no, p.err);
        if (!p.expect(",")) return fail(line_no, p.err);
        auto b = parse_operand(p);
        if (!b) return fail(line_no, p.err);
        ins.operands = {*c, *a, *b};
      } else {
        return fail(line_no, "unknown opcode '" + *op + "'");
      }
    }
    if (!p.done()) return fail(line_no, "trailing tokens");
    cur_block->instructions.push_back(std::move(ins));
  }

  if (cur_func) return fail(line_no, "unterminated function (missing '}')");
  if (m.functions.empty()) return fail(line_no, "empty module");

  if (auto diag = verify(m)) {
    ParseResult r;
    r.error = *diag;
    return r;
  }
  result.module = std::move(m);
  return result;
}

std::optional<Diagnostic> verify(const Module& m) {
  if (m.functions.empty()) return Diagnostic{0, "empty module"};
  for (const auto& f : m.functions) {
    if (f.blocks.empty())
      return Diagnostic{0, "function " + f.name + " has no blocks"};

    std::unordered_map<std::string, size_t> block_index;
    for (size_t i = 0; i < f.blocks.size(); ++i) {
      if (!block_index.emplace(f.blocks[i].label, i).second)
        return Diagnostic{0, "duplicate block label " + f.blocks[i].label};
    }

    std::unordered_set<std::string> defs;
    for (const auto& p : f.params) {
      if (!defs.insert(p).second)
        return Diagnostic{0, "register " + p + " assigned twice"};
    }
    for (const auto& b : f.blocks) {
      for (const auto& ins : b.instructions) {
        if (!ins.result.empty() && !defs.insert(ins.result).second)
          return Diagnostic{0, "register " + ins.result + " assigned twice"};
      }
    }

    // One terminator per block, at the end; targets must exist.
    std::vector<std::vector<size_t>> succs(f.blocks.size());
    for (size_t i = 0; i < f.blocks.size(); ++i) {
      const Block& b = f.blocks[i];
      if (b.instructions.empty() || !b.instructions.back().is_terminator())
        return Diagnostic{0, "block " + b.label + " missing terminator"};
      for (size_t k = 0; k + 1 < b.instructions.size(); ++k) {
        if (b.instructions[k].is_terminator())
          return Diagnostic{0, "terminator not at end of block " + b.label};
      }
      for (const auto& t : b.instructions.back().targets) {
        auto it = block_index.find(t);
        if (it == block_index.end())
          return Diagnostic{0, "unknown block label " + t};
        succs[i].push_back(it->second);
      }
    }

    // Acyclic CFG via DFS coloring.
    std::vector<int> color(f.blocks.size(), 0);
    std::vector<std::pair<size_t, size_t>> stack;
    color[0] = 1;
    stack.push_back({0, 0});
    while (!stack.empty()) {
      auto& [node, edge] = stack.back();
      if (edge < succs[node].size()) {
        size_t next = succs[node][edge++];
        if (color[next] == 1) return Diagnostic{0, "cyclic control flow"};
        if (color[next] == 0) {
          color[next] = 1;
          stack.push_back({next, 0});
        }
      } else {
        color[node] = 2;
        stack.pop_back();
      }
    }

    std::vector<int> preds(f.blocks.size(), 0);
    for (size_t i = 0; i < f.blocks.size(); ++i)
      for (size_t s : succs[i]) ++preds[s];
    for (size_t i = 1; i < f.blocks.size(); ++i) {
      if (preds[i] == 0)
        return Diagnostic{0, "block " + f.blocks[i].label + " has no predecessors"};
      if (color[i] == 0)
        return Diagnostic{0, "block " + f.blocks[i].label + " unreachable"};
    }

    // Definite assignment: in[b] = intersection of out[preds], walked in
    // a topological order (valid since the CFG is acyclic).
    std::vector<size_t> topo;
    {
      std::vector<int> indeg = preds;
      std::vector<size_t> ready{0};
      while (!ready.empty()) {
        size_t n = ready.back();
        ready.pop_back();
        topo.push_back(n);
        for (size_t s : succs[n]) {
          if (--indeg[s] == 0) ready.push_back(s);
        }
      }
    }
    std::vector<std::set<std::string>> out_sets(f.blocks.size());
    std::vector<bool> seen(f.blocks.size(), false);
    std::vector<std::vector<size_t>> pred_list(f.blocks.size());
    for (size_t i = 0; i < f.blocks.size(); ++i)
      for (size_t s : succs[i]) pred_list[s].push_back(i);

    for (size_t n : topo) {
      std::set<std::string> live;
      if (n == 0) {
        live.insert(f.params.begin(), f.params.end());
      } else {
        bool first = true;
        for (size_t p : pred_list[n]) {
          if (first) {
            live = out_sets[p];
            first = false;
          } else {
            std::set<std::string> inter;
            std::set_intersection(live.begin(), live.end(), out_sets[p].begin(),
                                  out_sets[p].end(),
                                  std::inserter(inter, inter.begin()));
            live = std::move(inter);
          }
        }
      }
      for (const auto& ins : f.blocks[n].instructions) {
        for (const auto& o : ins.operands) {
          if (o.is_reg && !live.count(o.reg))
            return Diagnostic{0, "use of undefined register " + o.reg};
        }
        if (!ins.result.empty()) live.insert(ins.result);
      }
      out_sets[n] = std::move(live);
      seen[n] = true;
    }
  }
  return std::nullopt;
}

std::string render(const Module& m) {
  std::ostringstream out;
  for (const auto& f : m.functions) {
    out << "func " << f.name << "(";
    for (size_t i = 0; i < f.params.size(); ++i) {
      if (i) out << ", ";
      out << f.params[i];
    }
    out << ") {\n";
    for (const auto& b : f.blocks) {
      out << b.label << ":\n";
      for (const auto& ins : b.instructions) {
        out << "  ";
        auto emit_operand = [&](const Operand& o) {
          if (o.is_reg)
            out << o.reg;
          else
            out << o.imm;
        };
        switch (ins.op) {
          case Opcode::Add:
          case Opcode::Sub:
          case Opcode::Mul:
          case Opcode::And:
          case Opcode::Or:
          case Opcode::Xor:
            out << ins.result << " = " << opcode_name(ins.op) << " " << ins.type
                << " ";
            emit_operand(ins.operands[0]);
            out << ", ";
            emit_operand(ins.operands[1]);
            break;
          case Opcode::Icmp:
            out << ins.result << " = icmp " << pred_name(ins.pred) << " "
                << ins.type << " ";
            emit_operand(ins.operands[0]);
            out << ", ";
            emit_operand(ins.operands[1]);
            break;
          case Opcode::Select:
            out << ins.result << " = select " << ins.type << " ";
            emit_operand(ins.operands[0]);
            out << ", ";
            emit_operand(ins.operands[1]);
            out << ", ";
            emit_operand(ins.operands[2]);
            break;
          case Opcode::Br:
            out << "br " << ins.targets[0];
            break;
          case Opcode::CondBr:
            out << "br ";
            emit_operand(ins.operands[0]);
            out << ", " << ins.targets[0] << ", " << ins.targets[1];
            break;
          case Opcode::Ret:
            out << "ret " << ins.type << " ";
            emit_operand(ins.operands[0]);
            break;
        }
        out << "\n";
      }
    }
    out << "}\n";
  }
  return out.str();
}

ExecResult interpret(const Module& m, const std::vector<int32_t>& args,
                     int64_t fuel) {
  ExecResult r;
  if (m.functions.empty()) {
    r.trap = "empty module";
    return r;
  }
  const Function& f = m.functions.front();
  std::unordered_map<std::string, int32_t> env;
  for (size_t i = 0; i < f.params.size(); ++i)
    env[f.params[i]] = i < args.size() ? args[i] : 0;

  std::unordered_map<std::string, const Block*> blocks;
  for (const auto& b : f.blocks) blocks[b.label] = &b;

  auto value_of = [&](const Operand& o) -> int32_t {
    return o.is_reg ? env.at(o.reg) : o.imm;
  };

  const Block* cur = &f.blocks.front();
  while (true) {
    for (const auto& ins : cur->instructions) {
      if (--fuel < 0) {
        r.trap = "fuel exhausted";
        return r;
      }
      switch (ins.op) {
        case Opcode::Add:
          env[ins.result] = wrap_add(value_of(ins.operands[0]), value_of(ins.operands[1]));
          break;
        case Opcode::Sub:
          env[ins.result] = wrap_sub(value_of(ins.operands[0]), value_of(ins.operands[1]));
          break;
        case Opcode::Mul:
          env[ins.result] = wrap_mul(value_of(ins.operands[0]), value_of(ins.operands[1]));
          break;
        case Opcode::And:
          env[ins.result] = value_of(ins.operands[0]) & value_of(ins.operands[1]);
          break;
        case Opcode::Or:
          env[ins.result] = value_of(ins.operands[0]) | value_of(ins.operands[1]);
          break;
        case Opcode::Xor:
          env[ins.result] = value_of(ins.operands[0]) ^ value_of(ins.operands[1]);
          break;
        case Opcode::Icmp: {
          int32_t a = value_of(ins.operands[0]);
          int32_t b = value_of(ins.operands[1]);
          bool v = false;
          switch (ins.pred) {
            case CmpPred::Eq: v = a == b; break;
            case CmpPred::Ne: v = a != b; break;
            case CmpPred::Slt: v = a < b; break;
            case CmpPred::Sgt: v = a > b; break;
          }
          env[ins.result] = v ? 1 : 0;
          break;
        }
        case Opcode::Select:
          env[ins.result] = value_of(ins.operands[0]) != 0
                                ? value_of(ins.operands[1])
                                : value_of(ins.operands[2]);
          break;
        case Opcode::Br:
          cur = blocks.at(ins.targets[0]);
          goto next_block;
        case Opcode::CondBr:
          cur = blocks.at(value_of(ins.operands[0]) != 0 ? ins.targets[0]
                                                         : ins.targets[1]);
          goto next_block;
        case Opcode::Ret:
          r.ok = true;
          r.value = value_of(ins.operands[0]);
          return r;
      }
    }
    r.trap = "fell off end of block";
    return r;
  next_block:;
  }
}

}  // namespace irfeed::mir
