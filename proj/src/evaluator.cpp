#include "chronolog/evaluator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <cstdlib>
#include <optional>
#include <thread>

#include "chronolog/stratifier.hpp"

namespace chronolog {

std::size_t Table::interval_count() const {
  std::size_t n = 0;
  for (const auto &[t, s] : rows)
    n += s.size();
  return n;
}

void Table::add(const Tuple &t, const IntervalSet &s) {
  if (s.empty())
    return;
  auto [it, inserted] = rows.emplace(t, s);
  if (!inserted)
    it->second = it->second.unite(s);
}

const Table *EvaluationResult::table(const std::string &predicate) const {
  auto it = tables.find(predicate);
  return it == tables.end() ? nullptr : &it->second;
}

namespace {

using Substitution = std::map<std::string, std::string>;

const Table kEmpty;

const Table &lookup(const TableMap &tables, const std::string &p) {
  auto it = tables.find(p);
  return it == tables.end() ? kEmpty : it->second;
}

// Extends s so that the atom's arguments match the tuple.
bool match(const Atom &a, const Tuple &t, Substitution &s) {
  if (a.args.size() != t.size())
    return false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Term &arg = a.args[i];
    if (!arg.is_variable()) {
      if (arg.name != t[i])
        return false;
      continue;
    }
    auto [it, inserted] = s.emplace(arg.name, t[i]);
    if (!inserted && it->second != t[i])
      return false;
  }
  return true;
}

const std::string &value(const Term &t, const Substitution &s) {
  return t.is_variable() ? s.at(t.name) : t.name;
}

bool passes(const std::vector<Comparison> &filters, const Substitution &s) {
  return std::all_of(filters.begin(), filters.end(), [&](const Comparison &c) {
    bool equal = value(c.lhs, s) == value(c.rhs, s);
    return c.op == ComparisonOp::Eq ? equal : !equal;
  });
}

Tuple instantiate(const Atom &a, const Substitution &s) {
  Tuple t;
  t.reserve(a.args.size());
  for (const Term &arg : a.args)
    t.push_back(value(arg, s));
  return t;
}

// Collects intervals per head tuple and coalesces once at the end.
class Accumulator {
public:
  Accumulator(const std::optional<Atom> &head) {
    out_.predicate = head ? head->predicate : std::string();
    out_.arity = head ? head->arity() : 0;
  }

  void add(const Tuple &t, const Interval &i) {
    if (!i.empty())
      pending_[t].push_back(i);
  }
  void add(const Tuple &t, const IntervalSet &s) {
    auto &v = pending_[t];
    v.insert(v.end(), s.begin(), s.end());
  }

  Table finish() {
    for (auto &[t, v] : pending_) {
      IntervalSet s = coalesce(std::move(v));
      if (!s.empty())
        out_.rows.emplace(t, std::move(s));
    }
    return std::move(out_);
  }

private:
  Table out_;
  std::map<Tuple, std::vector<Interval>> pending_;
};

Tuple head_tuple(const std::optional<Atom> &head, const Substitution &s) {
  return head ? instantiate(*head, s) : Tuple{};
}

} // namespace

Table eval_join(const JoinRule &r, const TableMap &tables) {
  Accumulator acc(r.head);
  const Table &left = lookup(tables, r.left.predicate);
  const Table &right = lookup(tables, r.right.predicate);

  std::vector<std::string> left_vars, shared;
  collect_variables(r.left, left_vars);
  std::vector<std::string> right_vars;
  collect_variables(r.right, right_vars);
  for (const std::string &v : right_vars)
    if (std::find(left_vars.begin(), left_vars.end(), v) != left_vars.end())
      shared.push_back(v);

  struct Entry {
    Substitution binding;
    const IntervalSet *intervals;
  };
  std::map<Tuple, std::vector<Entry>> index;
  for (const auto &[tuple, set] : right.rows) {
    Substitution s;
    if (!match(r.right, tuple, s))
      continue;
    Tuple key;
    for (const std::string &v : shared)
      key.push_back(s.at(v));
    index[key].push_back({std::move(s), &set});
  }

  for (const auto &[tuple, set] : left.rows) {
    Substitution s;
    if (!match(r.left, tuple, s))
      continue;
    Tuple key;
    for (const std::string &v : shared)
      key.push_back(s.at(v));
    auto it = index.find(key);
    if (it == index.end())
      continue;
    for (const Entry &e : it->second) {
      Substitution merged = s;
      merged.insert(e.binding.begin(), e.binding.end());
      if (!passes(r.filters, merged))
        continue;
      acc.add(head_tuple(r.head, merged), set.intersect(*e.intervals));
    }
  }
  return acc.finish();
}

Table eval_copy(const CopyRule &r, const TableMap &tables) {
  Accumulator acc(r.head);
  for (const auto &[tuple, set] : lookup(tables, r.body.predicate).rows) {
    Substitution s;
    if (match(r.body, tuple, s) && passes(r.filters, s))
      acc.add(head_tuple(r.head, s), set);
  }
  return acc.finish();
}

Table eval_box_head(const BoxHeadRule &r, const TableMap &tables) {
  Accumulator acc(r.head);
  for (const auto &[tuple, set] : lookup(tables, r.body.predicate).rows) {
    Substitution s;
    if (!match(r.body, tuple, s))
      continue;
    Tuple head = instantiate(r.head, s);
    for (const Interval &i : set)
      acc.add(head, shift_box_head(i, r.window, r.direction));
  }
  return acc.finish();
}

Table eval_box_body(const BoxBodyRule &r, const TableMap &tables) {
  Accumulator acc(r.head);
  for (const auto &[tuple, set] : lookup(tables, r.body.predicate).rows) {
    Substitution s;
    if (!match(r.body, tuple, s))
      continue;
    Tuple head = instantiate(r.head, s);
    // Rows are canonical, so every interval here is maximal.
    for (const Interval &i : set)
      acc.add(head, shrink_box_body(i, r.window, r.direction));
  }
  return acc.finish();
}

Table eval_rule(const NormalRule &r, const TableMap &tables) {
  return std::visit(
      [&](const auto &x) -> Table {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, JoinRule>)
          return eval_join(x, tables);
        else if constexpr (std::is_same_v<T, CopyRule>)
          return eval_copy(x, tables);
        else if constexpr (std::is_same_v<T, BoxHeadRule>)
          return eval_box_head(x, tables);
        else
          return eval_box_body(x, tables);
      },
      r.rule);
}

TableMap load_facts(const std::vector<Fact> &data) {
  std::map<std::string, std::map<Tuple, std::vector<Interval>>> grouped;
  std::map<std::string, std::size_t> arity;
  for (const Fact &f : data) {
    Tuple t;
    for (const Term &arg : f.atom.args)
      t.push_back(arg.name);
    grouped[f.atom.predicate][t].push_back(f.interval);
    arity[f.atom.predicate] = f.atom.arity();
  }
  TableMap tables;
  for (auto &[p, rows] : grouped) {
    Table &table = tables[p];
    table.predicate = p;
    table.arity = arity[p];
    for (auto &[t, v] : rows) {
      IntervalSet s = coalesce(std::move(v));
      if (!s.empty())
        table.rows.emplace(t, std::move(s));
    }
  }
  return tables;
}

namespace {

std::size_t worker_count(const EvaluationOptions &options) {
  if (options.single_thread)
    return 1;
  std::size_t n = options.threads;
  if (n == 0) {
    if (const char *env = std::getenv("CHRONOLOG_THREADS")) {
      char *end = nullptr;
      unsigned long v = std::strtoul(env, &end, 10);
      if (end != env && v > 0)
        n = v;
    }
  }
  if (n == 0)
    n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

// Runs f(i) for i in [0, n) on up to `workers` threads.
template <class F> void parallel_for(std::size_t n, std::size_t workers, F &&f) {
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure)
            failure = std::current_exception();
        }
      }
    });
  for (std::thread &t : pool)
    t.join();
  if (failure)
    std::rethrow_exception(failure);
}

} // namespace

EvaluationResult run(const NormalProgram &program, const std::vector<Fact> &data,
                     const EvaluationOptions &options) {
  using Clock = std::chrono::steady_clock;
  DependencyGraph graph = DependencyGraph::of(program);
  std::vector<std::vector<std::string>> levels = strata(graph);

  std::map<std::string, std::vector<const NormalRule *>> by_head;
  std::vector<const NormalRule *> falsum_rules;
  for (const NormalRule &r : program.rules) {
    std::string head = r.head_predicate();
    if (head.empty())
      falsum_rules.push_back(&r);
    else
      by_head[head].push_back(&r);
  }

  EvaluationResult result;
  result.tables = load_facts(data);
  const std::size_t workers = worker_count(options);

  for (const std::vector<std::string> &level : levels) {
    auto started = Clock::now();
    StratumStats stats;
    std::vector<Table> computed(level.size());
    parallel_for(level.size(), workers, [&](std::size_t k) {
      const std::string &p = level[k];
      Table t = lookup(result.tables, p);
      t.predicate = p;
      for (const NormalRule *r : by_head[p]) {
        Table part = eval_rule(*r, result.tables);
        t.arity = part.arity;
        for (const auto &[tuple, set] : part.rows)
          t.add(tuple, set);
      }
      computed[k] = std::move(t);
    });
    for (std::size_t k = 0; k < level.size(); ++k) {
      stats.rules += by_head[level[k]].size();
      stats.rows += computed[k].rows.size();
      stats.intervals += computed[k].interval_count();
      result.tables[level[k]] = std::move(computed[k]);
    }
    stats.predicates = level;
    stats.millis = std::chrono::duration<double, std::milli>(Clock::now() - started).count();
    result.stats.push_back(std::move(stats));
  }

  std::vector<Interval> bottom;
  for (const NormalRule *r : falsum_rules) {
    Table part = eval_rule(*r, result.tables);
    for (const auto &[tuple, set] : part.rows)
      bottom.insert(bottom.end(), set.begin(), set.end());
  }
  result.falsum = coalesce(std::move(bottom));
  result.status = result.falsum.empty() ? Status::Consistent : Status::Inconsistent;
  return result;
}

std::vector<Tuple> instantiations(const Atom &atom, const std::vector<std::string> &constants) {
  std::vector<std::string> vars;
  collect_variables(atom, vars);
  std::vector<Tuple> out;
  if (!vars.empty() && constants.empty())
    return out;
  std::vector<std::size_t> choice(vars.size(), 0);
  while (true) {
    Substitution s;
    for (std::size_t i = 0; i < vars.size(); ++i)
      s[vars[i]] = constants[choice[i]];
    out.push_back(instantiate(atom, s));
    std::size_t i = 0;
    for (; i < choice.size(); ++i) {
      if (++choice[i] < constants.size())
        break;
      choice[i] = 0;
    }
    if (i == choice.size())
      break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

AnswerSet answer(const Query &query, const EvaluationResult &result,
                 const std::vector<Fact> &data) {
  AnswerSet out;
  out.predicate = query.atom.predicate;
  out.status = result.status;
  if (result.status == Status::Inconsistent) {
    for (Tuple &t : instantiations(query.atom, individuals(data)))
      out.answers.push_back({std::move(t), Interval::everything()});
    return out;
  }
  const Table *table = result.table(query.atom.predicate);
  if (!table)
    return out;
  for (const auto &[tuple, set] : table->rows) {
    Substitution s;
    if (!match(query.atom, tuple, s))
      continue;
    for (const Interval &i : set)
      out.answers.push_back({tuple, i});
  }
  return out;
}

} // namespace chronolog
