#include "qseg/qasm.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qseg/error.hpp"

namespace qseg {

namespace {

using Namer = std::function<std::string(Qubit)>;

std::string operands(const std::vector<Qubit>& qs, const Namer& name) {
  std::string s;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (i) s += ", ";
    s += name(qs[i]);
  }
  return s;
}

// "negctrl @ ctrl(2) @ " for polarity runs over the first `k` operands.
std::string modifiers(std::size_t k, std::uint64_t neg) {
  std::string s;
  std::size_t i = 0;
  while (i < k) {
    const bool n = (neg >> i) & 1U;
    std::size_t j = i;
    while (j < k && (((neg >> j) & 1U) != 0) == n) ++j;
    s += n ? "negctrl" : "ctrl";
    if (j - i > 1) s += "(" + std::to_string(j - i) + ")";
    s += " @ ";
    i = j;
  }
  return s;
}

std::string statement(const Gate& g, const Namer& name) {
  const std::string args = operands(g.qubits, name);
  switch (g.kind) {
    case GateKind::X: return "x " + args + ";";
    case GateKind::H: return "h " + args + ";";
    case GateKind::RESET: return "reset " + args + ";";
    case GateKind::CSWAP:
      if (g.neg == 0) return "cswap " + args + ";";
      return modifiers(1, g.neg) + "swap " + args + ";";
    case GateKind::CNOT:
    case GateKind::TOFFOLI:
    case GateKind::MCX: {
      const std::size_t k = g.num_controls();
      if (g.neg == 0 && k == 1) return "cx " + args + ";";
      if (g.neg == 0 && k == 2) return "ccx " + args + ";";
      if (k == 0) return "x " + args + ";";
      return modifiers(k, g.neg) + "x " + args + ";";
    }
  }
  return "";
}

std::vector<Gate> ladder(const Gate& g, Qubit anc0) {
  const std::size_t k = g.num_controls();
  const auto& c = g.qubits;
  const Qubit t = c.back();
  auto a = [&](std::size_t i) { return anc0 + static_cast<Qubit>(i); };
  auto neg = [&](std::size_t i) { return g.control_negated(i); };
  std::vector<Gate> up;
  up.push_back(gates::toffoli(c[0], c[1], a(0), neg(0), neg(1)));
  for (std::size_t i = 2; i + 1 < k; ++i) up.push_back(gates::toffoli(c[i], a(i - 2), a(i - 1), neg(i), false));
  std::vector<Gate> out = up;
  out.push_back(gates::toffoli(c[k - 1], a(k - 3), t, neg(k - 1), false));
  out.insert(out.end(), up.rbegin(), up.rend());
  return out;
}

}  // namespace

std::string emit_qasm(const Circuit& circuit, const QasmOptions& options) {
  const auto nq = static_cast<Qubit>(circuit.num_qubits());
  std::size_t anc = 0;
  if (options.decompose_mcx) {
    for (const auto& g : circuit.gates()) {
      if (g.kind == GateKind::MCX && g.num_controls() >= 3) anc = std::max(anc, g.num_controls() - 2);
    }
  }
  const Namer name = [nq](Qubit q) {
    return q < nq ? "q[" + std::to_string(q) + "]" : "anc[" + std::to_string(q - nq) + "]";
  };
  std::string out = "OPENQASM 3.0;\ninclude \"stdgates.inc\";\n";
  out += "// q[i] is bit i of the basis label\n";
  out += "qubit[" + std::to_string(circuit.num_qubits()) + "] q;\n";
  if (anc > 0) out += "qubit[" + std::to_string(anc) + "] anc;\n";
  for (const auto& g : circuit.gates()) {
    if (options.decompose_mcx && g.kind == GateKind::MCX && g.num_controls() >= 3) {
      for (const auto& t : ladder(g, nq)) out += statement(t, name) + "\n";
    } else {
      out += statement(g, name) + "\n";
    }
  }
  return out;
}

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw Error(Errc::QasmParseError, "line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

struct Reg {
  Qubit offset;
  std::size_t size;
};

}  // namespace

Circuit parse_qasm(const std::string& text) {
  std::map<std::string, Reg> regs;
  std::size_t total = 0;
  struct Pending {
    std::size_t line;
    std::vector<std::pair<bool, bool>> ctrl;  // (is_control, negated)
    std::string base;
    std::vector<std::string> args;
  };
  std::vector<Pending> pending;

  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  std::string buffer;
  std::size_t buffer_line = 0;
  std::vector<std::pair<std::size_t, std::string>> stmts;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto cpos = raw.find("//");
    if (cpos != std::string::npos) raw.resize(cpos);
    for (char ch : raw) {
      if (ch == ';') {
        const std::string s = trim(buffer);
        if (!s.empty()) stmts.emplace_back(buffer_line ? buffer_line : lineno, s);
        buffer.clear();
        buffer_line = 0;
      } else {
        if (buffer_line == 0 && !std::isspace(static_cast<unsigned char>(ch))) buffer_line = lineno;
        buffer += ch;
      }
    }
    buffer += ' ';
  }
  if (!trim(buffer).empty()) fail(lineno, "statement missing ';'");

  for (const auto& [line, s] : stmts) {
    if (s.rfind("OPENQASM", 0) == 0 || s.rfind("include", 0) == 0) continue;
    if (s.rfind("qubit", 0) == 0) {
      const auto lb = s.find('[');
      const auto rb = s.find(']');
      if (lb == std::string::npos || rb == std::string::npos || rb < lb) fail(line, "bad qubit declaration");
      const std::size_t size = std::stoul(s.substr(lb + 1, rb - lb - 1));
      const std::string nm = trim(s.substr(rb + 1));
      if (nm.empty() || regs.count(nm)) fail(line, "bad or duplicate register name");
      regs[nm] = {static_cast<Qubit>(total), size};
      total += size;
      continue;
    }
    Pending p;
    p.line = line;
    auto parts = split(s, '@');
    std::string last = parts.back();
    parts.pop_back();
    for (const auto& m : parts) {
      bool negated = false;
      std::string word = m;
      std::size_t count = 1;
      const auto lp = word.find('(');
      if (lp != std::string::npos) {
        const auto rp = word.find(')');
        if (rp == std::string::npos) fail(line, "bad modifier '" + m + "'");
        count = std::stoul(word.substr(lp + 1, rp - lp - 1));
        word = trim(word.substr(0, lp));
      }
      if (word == "negctrl") negated = true;
      else if (word != "ctrl") fail(line, "unsupported modifier '" + m + "'");
      for (std::size_t i = 0; i < count; ++i) p.ctrl.emplace_back(true, negated);
    }
    const auto sp = last.find_first_of(" \t");
    if (sp == std::string::npos) fail(line, "gate without operands");
    p.base = last.substr(0, sp);
    p.args = split(last.substr(sp + 1), ',');
    pending.push_back(std::move(p));
  }

  auto resolve = [&](std::size_t line, const std::string& a) -> Qubit {
    const auto lb = a.find('[');
    const auto rb = a.find(']');
    if (lb == std::string::npos || rb == std::string::npos) fail(line, "bad operand '" + a + "'");
    const std::string nm = trim(a.substr(0, lb));
    const auto it = regs.find(nm);
    if (it == regs.end()) fail(line, "unknown register '" + nm + "'");
    const std::size_t idx = std::stoul(a.substr(lb + 1, rb - lb - 1));
    if (idx >= it->second.size) fail(line, "index out of range in '" + a + "'");
    return it->second.offset + static_cast<Qubit>(idx);
  };

  Circuit c(total);
  for (const auto& p : pending) {
    std::vector<Qubit> qs;
    for (const auto& a : p.args) qs.push_back(resolve(p.line, a));
    std::vector<bool> neg;
    for (const auto& m : p.ctrl) neg.push_back(m.second);
    std::string base = p.base;
    if (base == "cx") {
      neg.push_back(false);
      base = "x";
    } else if (base == "ccx") {
      neg.push_back(false);
      neg.push_back(false);
      base = "x";
    } else if (base == "cswap") {
      neg.push_back(false);
      base = "swap";
    }
    if (base == "reset" || base == "h") {
      if (!neg.empty() || qs.size() != 1) fail(p.line, base + " takes one operand and no modifiers");
      c.append(base == "h" ? gates::h(qs[0]) : gates::reset(qs[0]));
      continue;
    }
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < neg.size(); ++i) {
      if (neg[i]) mask |= std::uint64_t{1} << i;
    }
    if (base == "x") {
      if (qs.size() != neg.size() + 1) fail(p.line, "operand count does not match controls");
      const std::vector<Qubit> controls(qs.begin(), qs.end() - 1);
      c.append(gates::mcx(controls, qs.back(), mask));
    } else if (base == "swap") {
      if (neg.size() != 1 || qs.size() != 3) fail(p.line, "only singly controlled swap is supported");
      c.append(gates::cswap(qs[0], qs[1], qs[2], mask & 1U));
    } else {
      fail(p.line, "unsupported gate '" + base + "'");
    }
  }
  return c;
}

}  // namespace qseg
