// SPDX-License-Identifier: Apache-2.0
#include "convexsem/pregroup.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <set>

#include "convexsem/errors.hpp"

namespace convexsem {

namespace {

bool identifier_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool identifier_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

/// The single contraction law: x^{(z)} x^{(z+1)} cancels, which covers
/// both p^l p (z = -1) and p p^r (z = 0) and all iterated adjoints.
bool contractible(const SimpleType& left, const SimpleType& right) {
  return left.base == right.base && right.adjoint_degree == left.adjoint_degree + 1;
}

} // namespace

TypeString parse_type_string(const std::string& text) {
  TypeString out;
  std::size_t pos = 0;
  auto column = [&] { return static_cast<int>(pos) + 1; };
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    if (!identifier_start(text[pos]))
      fail_at(ErrorKind::SyntaxError,
              std::string("expected a type symbol, found '") + text[pos] + "'", 1, column());
    std::size_t start = pos;
    while (pos < text.size() && identifier_char(text[pos]))
      ++pos;
    SimpleType simple{text.substr(start, pos - start), 0};
    while (pos < text.size() && text[pos] == '.') {
      ++pos;
      if (pos >= text.size() || (text[pos] != 'l' && text[pos] != 'r'))
        fail_at(ErrorKind::SyntaxError, "expected 'l' or 'r' after '.'", 1, column());
      simple.adjoint_degree += (text[pos] == 'l') ? -1 : +1;
      ++pos;
      if (pos < text.size() && text[pos] != '.' &&
          !std::isspace(static_cast<unsigned char>(text[pos])))
        fail_at(ErrorKind::SyntaxError,
                std::string("unexpected '") + text[pos] + "' after adjoint suffix", 1,
                column());
    }
    out.simples.push_back(std::move(simple));
  }
  return out;
}

std::string format_simple_type(const SimpleType& simple) {
  std::string out = simple.base;
  for (int k = 0; k < std::abs(simple.adjoint_degree); ++k)
    out += (simple.adjoint_degree < 0) ? ".l" : ".r";
  return out;
}

std::string format_type_string(const TypeString& ts) {
  std::string out;
  for (const auto& simple : ts.simples) {
    if (!out.empty())
      out += ' ';
    out += format_simple_type(simple);
  }
  return out;
}

std::string diagram_to_string(const LinkDiagram& diagram) {
  std::string out = "links";
  if (diagram.links.empty())
    out += " none";
  for (const auto& [a, b] : diagram.links)
    out += " (" + std::to_string(a) + "," + std::to_string(b) + ")";
  out += "; survivors";
  if (diagram.survivors.empty())
    out += " none";
  for (int s : diagram.survivors)
    out += " " + std::to_string(s);
  return out;
}

std::vector<LinkDiagram> reduce(const TypeString& ts, const TypeString& target,
                                int max_diagrams) {
  int n = static_cast<int>(ts.simples.size());
  int m = static_cast<int>(target.simples.size());
  std::vector<LinkDiagram> out;
  if (max_diagrams <= 0 || n < m || (n - m) % 2 != 0)
    return out;

  // can_full[a][b]: the span [a, b) cancels away completely. The first
  // index of a cancelling span must link to some c with the interior
  // (a, c) and the remainder [c+1, b) cancelling in turn.
  std::vector<std::vector<char>> can_full(n + 1, std::vector<char>(n + 1, 0));
  for (int a = 0; a <= n; ++a)
    can_full[a][a] = 1;
  for (int len = 2; len <= n; len += 2)
    for (int a = 0; a + len <= n; ++a) {
      int b = a + len;
      for (int c = a + 1; c < b; c += 2)
        if (contractible(ts.simples[a], ts.simples[c]) && can_full[a + 1][c] &&
            can_full[c + 1][b]) {
          can_full[a][b] = 1;
          break;
        }
    }

  // feasible[i][t]: the suffix from i can realize the target suffix
  // from t. Index i either survives as target[t] or links ahead.
  std::vector<std::vector<char>> feasible(n + 1, std::vector<char>(m + 1, 0));
  feasible[n][m] = 1;
  for (int i = n - 1; i >= 0; --i)
    for (int t = m; t >= 0; --t) {
      bool ok = t < m && ts.simples[i] == target.simples[t] && feasible[i + 1][t + 1];
      for (int j = i + 1; j < n && !ok; j += 2)
        ok = contractible(ts.simples[i], ts.simples[j]) && can_full[i + 1][j] &&
             feasible[j + 1][t];
      feasible[i][t] = ok;
    }
  if (!feasible[0][0])
    return out;

  // Enumerate depth-first, trying links before survival and nearer
  // partners before farther ones. Every diagram has exactly (n - m) / 2
  // links, so this order IS lexicographic order on the sorted link
  // lists, and stopping at max_diagrams keeps the lexicographically
  // least ones. Feasibility pruning means every branch completes.
  LinkDiagram current;
  std::function<void(int, int, const std::function<void()>&)> enum_full =
      [&](int a, int b, const std::function<void()>& done) {
        if (static_cast<int>(out.size()) >= max_diagrams)
          return;
        if (a == b) {
          done();
          return;
        }
        for (int c = a + 1; c < b; c += 2)
          if (contractible(ts.simples[a], ts.simples[c]) && can_full[a + 1][c] &&
              can_full[c + 1][b]) {
            current.links.push_back({a, c});
            enum_full(a + 1, c, [&] { enum_full(c + 1, b, done); });
            current.links.pop_back();
          }
      };
  std::function<void(int, int)> enum_main = [&](int i, int t) {
    if (static_cast<int>(out.size()) >= max_diagrams)
      return;
    if (i == n) {
      out.push_back(current);
      return;
    }
    for (int j = i + 1; j < n; j += 2)
      if (contractible(ts.simples[i], ts.simples[j]) && can_full[i + 1][j] &&
          feasible[j + 1][t]) {
        current.links.push_back({i, j});
        enum_full(i + 1, j, [&] { enum_main(j + 1, t); });
        current.links.pop_back();
      }
    if (t < m && ts.simples[i] == target.simples[t] && feasible[i + 1][t + 1]) {
      current.survivors.push_back(i);
      enum_main(i + 1, t + 1);
      current.survivors.pop_back();
    }
  };
  enum_main(0, 0);
  return out;
}

bool validate_diagram(const TypeString& ts, const LinkDiagram& diagram,
                      const TypeString& target) {
  int n = static_cast<int>(ts.simples.size());
  std::vector<int> partner(n, -1);
  for (const auto& [i, j] : diagram.links) {
    if (i < 0 || j >= n || i >= j)
      return false;
    if (partner[i] != -1 || partner[j] != -1)
      return false;
    partner[i] = j;
    partner[j] = i;
    if (!contractible(ts.simples[i], ts.simples[j]))
      return false;
  }
  // Everything strictly under a link must be linked within it. This
  // rules out both crossings (a partner escaping the span) and trapped
  // survivors, i.e. exactly the diagrams that successive adjacent
  // cancellations cannot realize.
  for (const auto& [i, j] : diagram.links)
    for (int k = i + 1; k < j; ++k)
      if (partner[k] < i || partner[k] > j)
        return false;
  std::vector<int> unlinked;
  for (int k = 0; k < n; ++k)
    if (partner[k] == -1)
      unlinked.push_back(k);
  if (diagram.survivors != unlinked)
    return false;
  if (unlinked.size() != target.simples.size())
    return false;
  for (std::size_t k = 0; k < unlinked.size(); ++k)
    if (ts.simples[unlinked[k]] != target.simples[k])
      return false;
  return true;
}

std::vector<LinkDiagram> brute_force_reduce(const TypeString& ts,
                                            const TypeString& target) {
  int n = static_cast<int>(ts.simples.size());
  if (n > 10)
    fail(ErrorKind::InputTooLarge,
         "exhaustive reduction is limited to 10 simple types, got " + std::to_string(n));
  // Literal simulation: repeatedly cancel an adjacent contractible pair
  // of whatever string remains, recording which original indices were
  // linked. Distinct cancellation orders that produce the same link set
  // are collapsed by the visited set.
  std::set<std::vector<std::pair<int, int>>> visited;
  std::set<LinkDiagram> found;
  std::function<void(const std::vector<int>&, std::vector<std::pair<int, int>>)> walk =
      [&](const std::vector<int>& alive, std::vector<std::pair<int, int>> links) {
        std::sort(links.begin(), links.end());
        if (!visited.insert(links).second)
          return;
        bool matches = alive.size() == target.simples.size();
        for (std::size_t k = 0; matches && k < alive.size(); ++k)
          matches = ts.simples[alive[k]] == target.simples[k];
        if (matches)
          found.insert({links, alive});
        for (std::size_t k = 0; k + 1 < alive.size(); ++k)
          if (contractible(ts.simples[alive[k]], ts.simples[alive[k + 1]])) {
            std::vector<int> next = alive;
            next.erase(next.begin() + static_cast<std::ptrdiff_t>(k),
                       next.begin() + static_cast<std::ptrdiff_t>(k) + 2);
            auto more = links;
            more.push_back({alive[k], alive[k + 1]});
            walk(next, std::move(more));
          }
      };
  std::vector<int> all(ts.simples.size());
  std::iota(all.begin(), all.end(), 0);
  walk(all, {});
  return {found.begin(), found.end()};
}

} // namespace convexsem
