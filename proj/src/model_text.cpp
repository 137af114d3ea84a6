#include "csmv/model_text.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace csmv {

namespace {

std::string trim(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> words;
  std::istringstream in(text);
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

std::vector<std::string> parse_ident_list(const std::string& text, std::size_t line,
                                          const std::string& what) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty())
      throw ModelParseError("empty entry in " + what + " list", line);
    if (!is_identifier(item))
      throw ModelParseError("'" + item + "' is not a valid " + what + " name", line);
    out.push_back(item);
  }
  if (!trim(text).empty() && out.empty())
    throw ModelParseError("expected a " + what + " list", line);
  return out;
}

struct Line {
  std::size_t number;
  std::string text;
};

Formula parse_guard_text(const std::string& text, std::size_t line) {
  try {
    return parse_formula(text);
  } catch (const FormulaParseError& e) {
    throw ModelParseError(std::string("bad guard: ") + e.what(), line);
  }
}

class ModelParser {
 public:
  explicit ModelParser(std::string_view text) {
    std::size_t number = 1;
    std::size_t begin = 0;
    while (begin <= text.size()) {
      std::size_t nl = text.find('\n', begin);
      if (nl == std::string_view::npos) nl = text.size();
      std::string raw(text.substr(begin, nl - begin));
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
      const std::string trimmed = trim(raw);
      if (!trimmed.empty()) lines_.push_back({number, trimmed});
      last_line_ = number;
      ++number;
      begin = nl + 1;
      if (nl == text.size()) break;
    }
  }

  ParsedModel parse() {
    if (lines_.empty()) throw ModelParseError("empty model file", 1);
    parse_version();
    while (!done()) parse_section();
    if (model_.empty())
      throw ModelParseError("model file declares no entities", last_line_);
    return model_;
  }

 private:
  bool done() const { return cursor_ >= lines_.size(); }
  const Line& take() { return lines_[cursor_++]; }

  void parse_version() {
    const Line& l = take();
    const auto words = split_words(l.text);
    if (words.size() != 2 || words[0] != "csmv")
      throw ModelParseError("expected the format header 'csmv 1'", l.number);
    if (words[1] != "1")
      throw ModelParseError("unsupported format version '" + words[1] + "'",
                            l.number);
    model_.version = 1;
  }

  void parse_section() {
    const Line header = take();
    const auto words = split_words(header.text);
    const std::string& keyword = words[0];
    if (keyword == "csm" || keyword == "statechart" || keyword == "system") {
      if (words.size() != 2 || !is_identifier(words[1]))
        throw ModelParseError("expected '" + keyword + " <name>'", header.number);
      if (keyword == "csm")
        parse_csm(words[1], header.number);
      else if (keyword == "statechart")
        parse_statechart(words[1], header.number);
      else
        parse_system(words[1], header.number);
    } else if (keyword == "messages") {
      if (words.size() != 1)
        throw ModelParseError("'messages' takes no name", header.number);
      parse_messages(header.number);
    } else if (keyword == "accepting") {
      if (words.size() != 1)
        throw ModelParseError("'accepting' takes no name", header.number);
      parse_accepting(header.number);
    } else {
      throw ModelParseError("unknown section '" + keyword + "'", header.number);
    }
  }

  void claim_machine_name(const std::string& name, std::size_t line) {
    if (!machine_names_.insert(name).second)
      throw ModelParseError("duplicate machine name '" + name + "'", line);
  }

  // Splits "FROM -> TO : REST"; returns REST.
  std::string parse_arrow(const Line& l, std::size_t skip, std::string& from,
                          std::string& to) {
    const std::string text = trim(l.text.substr(skip));
    const auto arrow = text.find("->");
    if (arrow == std::string::npos)
      throw ModelParseError("expected '<from> -> <to> : ...'", l.number);
    const auto colon = text.find(':', arrow);
    if (colon == std::string::npos)
      throw ModelParseError("expected ':' after the transition endpoints", l.number);
    from = trim(text.substr(0, arrow));
    to = trim(text.substr(arrow + 2, colon - arrow - 2));
    if (!is_identifier(from) || !is_identifier(to))
      throw ModelParseError("transition endpoints must be state names", l.number);
    return trim(text.substr(colon + 1));
  }

  void parse_csm(const std::string& name, std::size_t header_line) {
    claim_machine_name(name, header_line);
    Csm m;
    m.name = name;
    bool saw_inputs = false, saw_outputs = false, closed = false;
    std::set<std::string> state_names;
    std::vector<std::size_t> transition_lines;
    std::size_t init_line = header_line;

    while (!done()) {
      const Line l = take();
      const auto words = split_words(l.text);
      const std::string& keyword = words[0];
      if (keyword == "end") {
        if (words.size() != 1)
          throw ModelParseError("'end' takes no arguments", l.number);
        closed = true;
        break;
      } else if (keyword == "inputs" || keyword == "outputs") {
        const auto list =
            parse_ident_list(trim(l.text.substr(keyword.size())), l.number, "symbol");
        auto& alphabet = keyword == "inputs" ? m.input_alphabet : m.output_alphabet;
        alphabet.insert(list.begin(), list.end());
        (keyword == "inputs" ? saw_inputs : saw_outputs) = true;
      } else if (keyword == "state") {
        std::string rest = trim(l.text.substr(keyword.size()));
        SymbolSet outputs;
        if (const auto slash = rest.find('/'); slash != std::string::npos) {
          const auto list =
              parse_ident_list(trim(rest.substr(slash + 1)), l.number, "symbol");
          outputs.insert(list.begin(), list.end());
          rest = trim(rest.substr(0, slash));
        }
        if (!is_identifier(rest))
          throw ModelParseError("expected 'state <name> [/ outputs]'", l.number);
        if (!state_names.insert(rest).second)
          throw ModelParseError("duplicate state '" + rest + "'", l.number);
        m.states.push_back({rest, std::move(outputs)});
      } else if (keyword == "init") {
        if (words.size() != 2 || !is_identifier(words[1]))
          throw ModelParseError("expected 'init <state>'", l.number);
        if (!m.initial.empty())
          throw ModelParseError("duplicate 'init' line", l.number);
        m.initial = words[1];
        init_line = l.number;
      } else if (keyword == "trans") {
        std::string from, to;
        const std::string guard_text = parse_arrow(l, keyword.size(), from, to);
        const Formula guard = parse_guard_text(guard_text, l.number);
        if (guard.is_false())
          throw ModelParseError(
              "transition guard is 0; such transitions never fire", l.number);
        m.transitions.push_back({from, guard, to});
        transition_lines.push_back(l.number);
      } else {
        throw ModelParseError("unexpected '" + keyword + "' in csm block", l.number);
      }
    }

    if (!closed)
      throw ModelParseError("csm '" + name + "' is missing its 'end'", header_line);
    if (!saw_inputs || !saw_outputs)
      throw ModelParseError("csm '" + name + "' must declare inputs and outputs",
                            header_line);
    if (m.initial.empty())
      throw ModelParseError("csm '" + name + "' has no 'init' line", header_line);
    if (!state_names.count(m.initial))
      throw ModelParseError("initial state '" + m.initial + "' is not declared",
                            init_line);
    for (std::size_t i = 0; i < m.transitions.size(); ++i) {
      if (!state_names.count(m.transitions[i].from))
        throw ModelParseError("unknown state '" + m.transitions[i].from + "'",
                              transition_lines[i]);
      if (!state_names.count(m.transitions[i].to))
        throw ModelParseError("unknown state '" + m.transitions[i].to + "'",
                              transition_lines[i]);
    }
    model_.csms.push_back(std::move(m));
  }

  StatechartTransition parse_statechart_trans(const Line& l, std::size_t skip) {
    StatechartTransition t;
    std::string rest = parse_arrow(l, skip, t.from, t.to);

    // Optional trailing `as <name>[, <name>]` clause. 'as' is reserved here.
    if (const auto as_pos = rest.rfind(" as "); as_pos != std::string::npos) {
      t.inserted_names =
          parse_ident_list(trim(rest.substr(as_pos + 4)), l.number, "state");
      if (t.inserted_names.empty())
        throw ModelParseError("expected state names after 'as'", l.number);
      rest = trim(rest.substr(0, as_pos));
    }

    std::string trigger_text = rest;
    if (const auto slash = rest.find('/'); slash != std::string::npos) {
      const auto actions =
          parse_ident_list(trim(rest.substr(slash + 1)), l.number, "action");
      if (actions.empty())
        throw ModelParseError("expected actions after '/'", l.number);
      t.actions = actions;
      trigger_text = trim(rest.substr(0, slash));
    }

    if (trigger_text.rfind("on ", 0) == 0) {
      std::string after = trim(trigger_text.substr(3));
      std::string event = after;
      if (const auto sp = after.find_first_of(" \t"); sp != std::string::npos) {
        event = after.substr(0, sp);
        const std::string tail = trim(after.substr(sp));
        if (tail.rfind("if ", 0) != 0)
          throw ModelParseError("expected 'if <formula>' after the event", l.number);
        t.condition = parse_guard_text(trim(tail.substr(3)), l.number);
      }
      if (!is_identifier(event))
        throw ModelParseError("'" + event + "' is not a valid event name", l.number);
      t.event = event;
    } else if (trigger_text.rfind("if ", 0) == 0) {
      t.condition = parse_guard_text(trim(trigger_text.substr(3)), l.number);
    } else {
      throw ModelParseError("expected 'on <event>' or 'if <formula>'", l.number);
    }
    if (t.condition && t.condition->is_false())
      throw ModelParseError("trigger condition is 0; the edge can never fire",
                            l.number);
    return t;
  }

  void parse_statechart(const std::string& name, std::size_t header_line) {
    claim_machine_name(name, header_line);
    Statechart s;
    s.name = name;
    bool closed = false;
    std::set<std::string> state_names;
    std::vector<std::size_t> transition_lines;
    std::size_t init_line = header_line;

    while (!done()) {
      const Line l = take();
      const auto words = split_words(l.text);
      const std::string& keyword = words[0];
      if (keyword == "end") {
        if (words.size() != 1)
          throw ModelParseError("'end' takes no arguments", l.number);
        closed = true;
        break;
      } else if (keyword == "state") {
        if (words.size() != 2 || !is_identifier(words[1]))
          throw ModelParseError("expected 'state <name>'", l.number);
        if (!state_names.insert(words[1]).second)
          throw ModelParseError("duplicate state '" + words[1] + "'", l.number);
        s.states.push_back(words[1]);
      } else if (keyword == "init") {
        if (words.size() != 2 || !is_identifier(words[1]))
          throw ModelParseError("expected 'init <state>'", l.number);
        if (!s.initial.empty())
          throw ModelParseError("duplicate 'init' line", l.number);
        s.initial = words[1];
        init_line = l.number;
      } else if (keyword == "trans") {
        s.transitions.push_back(parse_statechart_trans(l, keyword.size()));
        transition_lines.push_back(l.number);
      } else {
        throw ModelParseError("unexpected '" + keyword + "' in statechart block",
                              l.number);
      }
    }

    if (!closed)
      throw ModelParseError("statechart '" + name + "' is missing its 'end'",
                            header_line);
    if (s.initial.empty())
      throw ModelParseError("statechart '" + name + "' has no 'init' line",
                            header_line);
    if (!state_names.count(s.initial))
      throw ModelParseError("initial state '" + s.initial + "' is not declared",
                            init_line);
    for (std::size_t i = 0; i < s.transitions.size(); ++i) {
      if (!state_names.count(s.transitions[i].from))
        throw ModelParseError("unknown state '" + s.transitions[i].from + "'",
                              transition_lines[i]);
      if (!state_names.count(s.transitions[i].to))
        throw ModelParseError("unknown state '" + s.transitions[i].to + "'",
                              transition_lines[i]);
    }
    model_.statecharts.push_back(std::move(s));
  }

  void parse_messages(std::size_t header_line) {
    if (model_.messages)
      throw ModelParseError("duplicate messages section", header_line);
    MessageDecl d;
    bool closed = false;
    while (!done()) {
      const Line l = take();
      const auto words = split_words(l.text);
      const std::string& keyword = words[0];
      if (keyword == "end") {
        if (words.size() != 1)
          throw ModelParseError("'end' takes no arguments", l.number);
        closed = true;
        break;
      }
      SymbolSet* target = nullptr;
      if (keyword == "message")
        target = &d.messages;
      else if (keyword == "environment")
        target = &d.environment_events;
      else if (keyword == "condition")
        target = &d.conditions;
      else if (keyword == "external")
        target = &d.external_actions;
      else
        throw ModelParseError("unexpected '" + keyword + "' in messages block",
                              l.number);
      const auto list =
          parse_ident_list(trim(l.text.substr(keyword.size())), l.number, "symbol");
      target->insert(list.begin(), list.end());
    }
    if (!closed)
      throw ModelParseError("messages section is missing its 'end'", header_line);
    model_.messages = std::move(d);
  }

  void parse_system(const std::string& name, std::size_t header_line) {
    if (!system_names_.insert(name).second)
      throw ModelParseError("duplicate system name '" + name + "'", header_line);
    SystemDecl decl;
    decl.name = name;
    bool closed = false;
    while (!done()) {
      const Line l = take();
      const auto words = split_words(l.text);
      const std::string& keyword = words[0];
      if (keyword == "end") {
        if (words.size() != 1)
          throw ModelParseError("'end' takes no arguments", l.number);
        closed = true;
        break;
      } else if (keyword == "member") {
        if (words.size() != 2 || !is_identifier(words[1]))
          throw ModelParseError("expected 'member <machine>'", l.number);
        for (const auto& existing : decl.members)
          if (existing == words[1])
            throw ModelParseError("duplicate member '" + words[1] + "'", l.number);
        decl.members.push_back(words[1]);
      } else if (keyword == "internal" || keyword == "environment") {
        const auto list =
            parse_ident_list(trim(l.text.substr(keyword.size())), l.number, "symbol");
        auto& target = keyword == "internal" ? decl.internal_override
                                             : decl.environment_override;
        target.insert(list.begin(), list.end());
      } else {
        throw ModelParseError("unexpected '" + keyword + "' in system block",
                              l.number);
      }
    }
    if (!closed)
      throw ModelParseError("system '" + name + "' is missing its 'end'",
                            header_line);
    if (decl.members.empty())
      throw ModelParseError("system '" + name + "' has no members", header_line);
    model_.systems.push_back(std::move(decl));
  }

  void parse_accepting(std::size_t header_line) {
    bool closed = false;
    while (!done()) {
      const Line l = take();
      if (l.text == "end") {
        closed = true;
        break;
      }
      const auto words = split_words(l.text);
      if (words.size() != 1)
        throw ModelParseError("expected one pattern per line", l.number);
      model_.accepting_patterns.push_back(words[0]);
    }
    if (!closed)
      throw ModelParseError("accepting section is missing its 'end'", header_line);
  }

  std::vector<Line> lines_;
  std::size_t cursor_ = 0;
  std::size_t last_line_ = 1;
  ParsedModel model_;
  std::set<std::string> machine_names_;  // csm and statechart names together
  std::set<std::string> system_names_;
};

std::string join(const SymbolSet& symbols) {
  std::string out;
  for (const auto& s : symbols) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

}  // namespace

ParsedModel parse_model(std::string_view text) { return ModelParser(text).parse(); }

std::string render_model(const ParsedModel& m) {
  std::ostringstream out;
  out << "csmv " << m.version << "\n";

  for (const auto& c : m.csms) {
    out << "\ncsm " << c.name << "\n";
    out << "  inputs";
    if (!c.input_alphabet.empty()) out << " " << join(c.input_alphabet);
    out << "\n";
    out << "  outputs";
    if (!c.output_alphabet.empty()) out << " " << join(c.output_alphabet);
    out << "\n";
    for (const auto& st : c.states) {
      out << "  state " << st.name;
      if (!st.outputs.empty()) out << " / " << join(st.outputs);
      out << "\n";
    }
    out << "  init " << c.initial << "\n";
    for (const auto& t : c.transitions)
      out << "  trans " << t.from << " -> " << t.to << " : " << render_formula(t.guard)
          << "\n";
    out << "end\n";
  }

  for (const auto& s : m.statecharts) {
    out << "\nstatechart " << s.name << "\n";
    for (const auto& st : s.states) out << "  state " << st << "\n";
    out << "  init " << s.initial << "\n";
    for (const auto& t : s.transitions) {
      out << "  trans " << t.from << " -> " << t.to << " : ";
      if (t.event) {
        out << "on " << *t.event;
        if (t.condition) out << " if " << render_formula(*t.condition);
      } else {
        out << "if " << render_formula(*t.condition);
      }
      if (!t.actions.empty()) out << " / " << join(t.actions);
      if (!t.inserted_names.empty()) out << " as " << join(t.inserted_names);
      out << "\n";
    }
    out << "end\n";
  }

  if (m.messages) {
    out << "\nmessages\n";
    if (!m.messages->messages.empty())
      out << "  message " << join(m.messages->messages) << "\n";
    if (!m.messages->environment_events.empty())
      out << "  environment " << join(m.messages->environment_events) << "\n";
    if (!m.messages->conditions.empty())
      out << "  condition " << join(m.messages->conditions) << "\n";
    if (!m.messages->external_actions.empty())
      out << "  external " << join(m.messages->external_actions) << "\n";
    out << "end\n";
  }

  for (const auto& s : m.systems) {
    out << "\nsystem " << s.name << "\n";
    for (const auto& member : s.members) out << "  member " << member << "\n";
    if (!s.internal_override.empty())
      out << "  internal " << join(s.internal_override) << "\n";
    if (!s.environment_override.empty())
      out << "  environment " << join(s.environment_override) << "\n";
    out << "end\n";
  }

  if (!m.accepting_patterns.empty()) {
    out << "\naccepting\n";
    for (const auto& p : m.accepting_patterns) out << "  " << p << "\n";
    out << "end\n";
  }

  return out.str();
}

SystemModel build_system(const ParsedModel& m, const std::string& system_name) {
  const SystemDecl* decl = nullptr;
  if (system_name.empty()) {
    if (m.systems.empty()) throw Error("the model file declares no system");
    if (m.systems.size() > 1)
      throw Error("the model file declares several systems; pick one by name");
    decl = &m.systems.front();
  } else {
    for (const auto& s : m.systems)
      if (s.name == system_name) decl = &s;
    if (!decl) throw Error("no system named '" + system_name + "'");
  }

  SystemModel sys;
  sys.name = decl->name;
  for (const auto& member : decl->members) {
    const Csm* machine = nullptr;
    for (const auto& c : m.csms)
      if (c.name == member) machine = &c;
    if (!machine) {
      for (const auto& s : m.statecharts)
        if (s.name == member)
          throw Error("system member '" + member +
                      "' is a statechart; transform it to a machine first");
      throw Error("system member '" + member + "' is not declared");
    }
    sys.machines.push_back(*machine);
  }
  sys.declared_internal = decl->internal_override;
  sys.declared_environment = decl->environment_override;
  sys.accepting_patterns = m.accepting_patterns;
  return sys;
}

ParsedModel transform_model(const ParsedModel& m) {
  if (m.statecharts.empty()) throw Error("no statechart sections to transform");
  if (!m.messages)
    throw Error("statechart transformation requires a messages section");

  ParsedModel out;
  out.version = m.version;
  out.csms = m.csms;
  for (const auto& s : m.statecharts)
    out.csms.push_back(to_csm(s, *m.messages).machine);
  out.systems = m.systems;
  out.accepting_patterns = m.accepting_patterns;
  return out;
}

std::vector<SymbolSet> parse_env_sequence(std::string_view text) {
  std::vector<SymbolSet> steps;
  std::size_t number = 1;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t nl = text.find('\n', begin);
    const bool last = nl == std::string_view::npos;
    if (last) nl = text.size();
    const std::string raw(text.substr(begin, nl - begin));
    const std::string line = trim(raw);
    if (!(last && line.empty())) {  // no phantom step after a trailing newline
      if (!line.empty() && line[0] == '#') {
        // comment line, no step
      } else if (line.empty()) {
        steps.emplace_back();
      } else {
        const auto symbols = parse_ident_list(line, number, "symbol");
        steps.emplace_back(symbols.begin(), symbols.end());
      }
    }
    ++number;
    begin = nl + 1;
    if (last) break;
  }
  return steps;
}

}  // namespace csmv
