#include "dbcat/text_format.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace dbcat {

namespace {

std::string trim(std::string_view s) {
  const char* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

[[noreturn]] void format_error(std::size_t line, const std::string& msg) {
  fail(ErrorCode::FormatError, "line " + std::to_string(line) + ": " + msg);
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadedInstance parse_instance_text(std::string_view text) {
  const auto lines = split_lines(text);
  LoadedInstance out;
  bool have_domain = false;
  std::vector<Label> labels;

  struct Block {
    std::string name;
    int arity = 0;
    bool empty_marker = false;
    std::size_t line = 0;
    std::vector<std::vector<std::string>> tuples;
  };
  std::optional<Block> block;

  auto close_block = [&] {
    if (!block) return;
    if (block->empty_marker && !block->tuples.empty())
      format_error(block->line, "relation " + block->name + " is marked empty but has tuples");
    Relation r = make_relation(out.domain, block->arity, block->tuples);
    std::optional<int> declared;
    if (block->arity > 0) declared = block->arity;
    labels.push_back({block->name, declared, std::move(r)});
    block.reset();
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const std::string line = trim(lines[i]);
    if (!line.empty() && line[0] == '#') continue;
    if (line.empty()) {
      close_block();
      continue;
    }
    if (!have_domain) {
      if (line.rfind("domain:", 0) != 0) format_error(lineno, "expected 'domain:'");
      auto syms = words(std::string_view(line).substr(7));
      if (syms.empty()) format_error(lineno, "empty domain");
      for (const auto& s : syms)
        if (!is_identifier(s)) format_error(lineno, "bad constant '" + s + "'");
      out.domain = Domain(std::move(syms));
      have_domain = true;
      continue;
    }
    if (line.rfind("relation ", 0) == 0) {
      close_block();
      auto colon = line.find(':');
      if (colon == std::string::npos) format_error(lineno, "expected ':' after relation header");
      std::string head = trim(std::string_view(line).substr(9, colon - 9));
      std::string rest = trim(std::string_view(line).substr(colon + 1));
      auto slash = head.find('/');
      if (slash == std::string::npos) format_error(lineno, "expected NAME/ARITY");
      Block b;
      b.name = trim(std::string_view(head).substr(0, slash));
      std::string arity = trim(std::string_view(head).substr(slash + 1));
      if (!is_identifier(b.name)) format_error(lineno, "bad relation name '" + b.name + "'");
      if (b.name == "bot") format_error(lineno, "'bot' is reserved");
      if (arity.empty() || arity.size() > 4 ||
          arity.find_first_not_of("0123456789") != std::string::npos)
        format_error(lineno, "bad arity '" + arity + "'");
      b.arity = std::stoi(arity);
      b.line = lineno;
      if (rest == "empty") {
        b.empty_marker = true;
      } else if (!rest.empty()) {
        format_error(lineno, "unexpected '" + rest + "' after relation header");
      }
      for (const auto& l : labels)
        if (l.name == b.name) format_error(lineno, "duplicate relation " + b.name);
      block = std::move(b);
      continue;
    }
    if (!block) format_error(lineno, "tuple outside a relation block");
    if (block->empty_marker) format_error(lineno, "relation " + block->name + " is marked empty");
    block->tuples.push_back(words(line));
  }
  close_block();
  if (!have_domain) format_error(1, "missing 'domain:' line");
  out.instance = Instance{std::move(labels)};
  return out;
}

LoadedInstance load_instance_file(const std::filesystem::path& path) {
  return parse_instance_text(read_file(path));
}

std::string write_instance_text(const Domain& domain, const Instance& instance) {
  std::string out = "domain:";
  for (const auto& s : domain.symbols()) out += " " + s;
  out += "\n";
  Instance labeled = instance.with_auto_labels();
  std::vector<const Label*> order;
  for (const auto& l : labeled.labels()) order.push_back(&l);
  std::stable_sort(order.begin(), order.end(),
                   [](const Label* x, const Label* y) { return x->relation < y->relation; });
  for (const Label* l : order) {
    const Relation& r = l->relation;
    if (r.origin() != kUntagged)
      fail(ErrorCode::FormatError, "relation " + l->name + " carries a coproduct tag");
    out += "\n";
    if (r.is_bottom()) {
      out += "relation " + l->name + "/" + std::to_string(l->declared_arity.value_or(0)) +
             ": empty\n";
      continue;
    }
    out += "relation " + l->name + "/" + std::to_string(r.arity()) + ":\n";
    for (const auto& t : r.tuples()) {
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += " ";
        out += domain.symbol(t[i]);
      }
      out += "\n";
    }
  }
  return out;
}

MorphismFile parse_morphism_text(std::string_view text, const std::filesystem::path& base) {
  const auto lines = split_lines(text);
  MorphismFile out;
  bool have_header = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string line = trim(lines[i]);
    if (line.empty() || line[0] == '#') continue;
    if (!have_header) {
      if (line.rfind("morphism ", 0) != 0) format_error(i + 1, "expected 'morphism SRC -> TGT'");
      std::string rest = line.substr(9);
      auto arrow = rest.find("->");
      if (arrow == std::string::npos) format_error(i + 1, "expected '->'");
      std::string src = trim(std::string_view(rest).substr(0, arrow));
      std::string tgt = trim(std::string_view(rest).substr(arrow + 2));
      if (src.empty() || tgt.empty()) format_error(i + 1, "missing source or target");
      out.source = base / src;
      out.target = base / tgt;
      have_header = true;
      continue;
    }
    out.queries.push_back(line);
  }
  if (!have_header) format_error(1, "missing morphism header");
  return out;
}

MorphismFile load_morphism_file(const std::filesystem::path& path) {
  return parse_morphism_text(read_file(path), path.parent_path());
}

}  // namespace dbcat
