#pragma once

// Test-side oracles, written against the address scheme only and sharing no
// code with the library's geometry.

#include <deque>
#include <map>
#include <vector>

#include "treescale/harness.hpp"

namespace oracle {

using treescale::Label;
using treescale::Word;

/// Explicit adjacency lists for the ball of radius R about the root.
struct ExplicitBall {
  std::vector<Word> nodes;
  std::map<Word, int> index;
  std::vector<std::vector<int>> adj;

  ExplicitBall(int qE, int qO, int R) {
    add({});
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      Word w = nodes[i];
      if (static_cast<int>(w.size()) == R) continue;
      int q = w.size() % 2 == 0 ? qE : qO;
      int lo = w.empty() ? 0 : 1;
      for (int l = lo; l <= q; ++l) {
        Word c = w;
        c.push_back(l);
        int j = add(c);
        adj[i].push_back(j);
        adj[j].push_back(static_cast<int>(i));
      }
    }
  }

  int add(const Word& w) {
    index[w] = static_cast<int>(nodes.size());
    nodes.push_back(w);
    adj.emplace_back();
    return index[w];
  }

  std::vector<int> bfs(const Word& from) const {
    std::vector<int> dist(nodes.size(), -1);
    std::deque<int> todo{index.at(from)};
    dist[index.at(from)] = 0;
    while (!todo.empty()) {
      int u = todo.front();
      todo.pop_front();
      for (int v : adj[u])
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          todo.push_back(v);
        }
    }
    return dist;
  }

  int distance(const Word& a, const Word& b) const { return bfs(a)[index.at(b)]; }
};

/// Pointwise equality on the ball of radius R about the root.
inline bool agree_on_ball(const treescale::Automorphism& g, const treescale::Automorphism& h, int R) {
  for (const auto& v : g.tree().ball(treescale::Vertex::root(), R))
    if (g(v) != h(v)) return false;
  return true;
}

}  // namespace oracle
