#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "seq.hpp"

namespace altlex {

// Raised when an omega-product point does not collapse to the segment grammar.
struct unpresentable_tail : validation_error {
  using validation_error::validation_error;
};

inline TransfiniteSeq embed_real(const Rat& r) {
  if (r < 0 || r > 1) throw validation_error("embed_real argument outside [0,1]");
  FiniteSeg f;
  if (r > 0) f.values.push_back(r);
  f.values.push_back(Rat(0));
  return TransfiniteSeq{{Segment{std::move(f)}}};
}

inline std::vector<Rat> default_anchors(std::size_t count) {
  std::vector<Rat> y;
  for (std::size_t b = 0; b < count; ++b) y.push_back(Rat(1, 2) + inv_pow2(static_cast<unsigned>(b) + 1));
  return y;
}

inline void check_anchors(const std::vector<Rat>& y, std::size_t factors) {
  if (y.size() != factors + 1)
    throw validation_error("anchor list needs one more entry than factors");
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] < Rat(1, 2) || y[i] > 1)
      throw validation_error("anchors must lie in [1/2,1]");
    if (i > 0 && y[i] >= y[i - 1])
      throw validation_error("anchors must strictly decrease");
  }
}

inline void check_even_image(const TransfiniteSeq& img) {
  seq_require_valid(img, true);
  if (ord_parity(seq_length(img)) != Parity::Even)
    throw validation_error("factor image must have even length; evenize it first");
}

inline TransfiniteSeq seq_concat_or_init(const TransfiniteSeq& x, const TransfiniteSeq& y) {
  if (x.segments.empty()) return y;
  return seq_concat(x, y);
}

// Scaled concatenation of per-factor images between consecutive anchors,
// closed off with a final 0.
inline TransfiniteSeq product_embed(const std::vector<TransfiniteSeq>& images,
                                    std::vector<Rat> anchors = {}) {
  if (anchors.empty()) anchors = default_anchors(images.size() + 1);
  check_anchors(anchors, images.size());
  TransfiniteSeq out;
  for (std::size_t b = 0; b < images.size(); ++b) {
    check_even_image(images[b]);
    Rat scale = (anchors[b] - anchors[b + 1]) / 2;
    out = seq_concat_or_init(out, seq_affine(scale, images[b], anchors[b + 1]));
  }
  return seq_concat_or_init(out, embed_real(Rat(0)));
}

// Omega-fold product: declared prefix factors, then one point repeated
// forever. Emitted only when the repeated affine copies collapse to a
// single geometric tail over the default anchors.
inline TransfiniteSeq product_embed_omega(const std::vector<TransfiniteSeq>& prefix_images,
                                          const TransfiniteSeq& repeated_image) {
  std::size_t m = prefix_images.size();
  auto anchor = [](std::size_t b) { return Rat(1, 2) + inv_pow2(static_cast<unsigned>(b) + 1); };
  TransfiniteSeq out;
  for (std::size_t b = 0; b < m; ++b) {
    check_even_image(prefix_images[b]);
    Rat scale = (anchor(b) - anchor(b + 1)) / 2;
    out = seq_concat_or_init(out, seq_affine(scale, prefix_images[b], anchor(b + 1)));
  }
  check_even_image(repeated_image);
  if (seq_length(repeated_image) != Ordinal::finite(2))
    throw unpresentable_tail("repeated factor image must be a two-value sequence");
  Rat v0 = segment_first(repeated_image.segments.front());
  // candidate tail: values of the repeated affine copies, interleaved with anchors
  auto w = [&](std::size_t b) { return (anchor(b) - anchor(b + 1)) / 2 * v0 + anchor(b + 1); };
  Rat limit(1, 2);
  Rat start = w(m);
  for (unsigned n = 0; n < 4; ++n) {
    Rat expected = limit + (start - limit) * inv_pow2(n);
    Rat actual = (n % 2 == 0) ? w(m + n / 2) : anchor(m + 1 + n / 2);
    if (expected != actual)
      throw unpresentable_tail("repeated affine copies do not form a geometric tail");
  }
  TransfiniteSeq tail{{Segment{OmegaTailSeg{start, limit}}}};
  out = seq_concat_or_init(out, tail);
  return seq_concat(out, embed_real(Rat(0)));
}

// Lexicographic gluing of fiber orders along a base order.
inline TransfiniteSeq glue_embed(const TransfiniteSeq& base_image,
                                 const TransfiniteSeq& fiber_image) {
  check_even_image(base_image);
  seq_require_valid(fiber_image, true);
  TransfiniteSeq out = seq_affine(Rat(1, 2), base_image, Rat(1, 2));
  out = seq_concat(out, seq_affine(Rat(1, 8), fiber_image, Rat(1, 4)));
  return seq_concat(out, embed_real(Rat(0)));
}

// Duplication L x 2 as a gluing with two-point fibers.
inline TransfiniteSeq duplicate_embed(const TransfiniteSeq& inner_image, unsigned bit) {
  if (bit > 1) throw validation_error("duplicate bit must be 0 or 1");
  return glue_embed(inner_image, embed_real(Rat(bit + 1, 3)));
}

// Finite partition tree with strictly decreasing labels along branches.
struct TreeNode {
  Rat label;
  std::vector<TreeNode> children;  // 0 (leaf), 1 or 2, in left/right order
};

inline void tree_validate(const TreeNode& t, const Rat* parent_label = nullptr) {
  if (t.label <= 0 || t.label >= 1)
    throw validation_error("tree labels must lie in (0,1)");
  if (parent_label && t.label >= *parent_label)
    throw validation_error("tree labels must strictly decrease along branches");
  if (t.children.size() > 2)
    throw validation_error("tree nodes carry at most two children");
  for (const auto& c : t.children) tree_validate(c, &t.label);
}

inline std::size_t tree_leaf_count(const TreeNode& t) {
  if (t.children.empty()) return 1;
  std::size_t n = 0;
  for (const auto& c : t.children) n += tree_leaf_count(c);
  return n;
}

// Values appended along the branch to the given leaf (left-to-right leaf
// numbering). One rational is appended per step below the root: a lone
// child takes the midpoint of (its parent's label, current inf); a sibling
// pair splits that interval with the midpoint and the midpoint's lower
// half, assigned by the parity of the append position.
inline std::vector<Rat> tree_branch_values(const TreeNode& root, std::size_t leaf) {
  tree_validate(root);
  std::vector<Rat> vals;
  const TreeNode* node = &root;
  Rat inf(1);
  std::size_t remaining = leaf;
  if (leaf >= tree_leaf_count(root)) throw validation_error("leaf index out of range");
  while (!node->children.empty()) {
    if (node->children.size() == 1) {
      const TreeNode& c = node->children[0];
      Rat r = midpoint(c.label, inf);
      vals.push_back(r);
      inf = r;
      node = &c;
      continue;
    }
    Rat big = midpoint(node->label, inf);
    Rat small = midpoint(node->label, big);
    bool even_pos = vals.size() % 2 == 0;
    // at even positions smaller values sort first, at odd positions last
    Rat left_val = even_pos ? small : big;
    Rat right_val = even_pos ? big : small;
    std::size_t left_leaves = tree_leaf_count(node->children[0]);
    if (remaining < left_leaves) {
      vals.push_back(left_val);
      inf = left_val;
      node = &node->children[0];
    } else {
      remaining -= left_leaves;
      vals.push_back(right_val);
      inf = right_val;
      node = &node->children[1];
    }
  }
  // a one-node tree embeds its single point below the virtual inf of 1
  if (vals.empty()) vals.push_back(midpoint(node->label, inf));
  return vals;
}

inline TransfiniteSeq tree_embed(const TreeNode& root, std::size_t leaf) {
  std::vector<Rat> vals = tree_branch_values(root, leaf);
  FiniteSeg f;
  f.values = std::move(vals);
  f.values.push_back(Rat(0));
  TransfiniteSeq out{{Segment{std::move(f)}}};
  seq_require_valid(out, true);
  return out;
}

// ---------------------------------------------------------------------------
// Order expression AST and its compiler.

enum class ExprKind { Real, Chain, Product, Glue, Duplicate, Tree };

struct OrderExpr {
  ExprKind kind = ExprKind::Real;
  std::uint64_t n = 0;               // Chain size
  std::vector<OrderExpr> children;   // Product factors; Glue base then fibers; Duplicate inner
  std::vector<Rat> anchors;          // Product only, optional
  bool omega_repeat = false;         // Product of one factor repeated omega times
  std::vector<Rat> samples;          // Real: optional enumeration samples
  std::vector<TreeNode> tree;        // Tree: single root
};

enum class PointKind { Real, Index, Tuple, Pair, Dup, Leaf };

struct PointExpr {
  PointKind kind = PointKind::Real;
  Rat r;
  std::uint64_t index = 0;           // chain index, leaf index, or duplicate bit
  std::vector<PointExpr> kids;       // tuple components; pair is (base, fiber)
  bool repeat = false;               // tuple: last component repeated forever
};

inline bool point_equal(const PointExpr& a, const PointExpr& b) {
  if (a.kind != b.kind || a.r != b.r || a.index != b.index || a.repeat != b.repeat ||
      a.kids.size() != b.kids.size())
    return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!point_equal(a.kids[i], b.kids[i])) return false;
  return true;
}

struct CompiledOrder {
  bool finite = true;                 // whether the point set is finitely enumerable
  std::vector<PointExpr> points;      // in increasing denoted order, when finite
  std::function<TransfiniteSeq(const PointExpr&)> embed;
};

inline CompiledOrder compile(const OrderExpr& expr);

namespace detail {

inline PointExpr real_point(Rat r) {
  PointExpr p;
  p.kind = PointKind::Real;
  p.r = std::move(r);
  return p;
}

inline CompiledOrder compile_product(const OrderExpr& expr) {
  std::vector<CompiledOrder> factors;
  for (const auto& c : expr.children) factors.push_back(compile(c));
  CompiledOrder out;
  if (expr.omega_repeat) {
    if (factors.size() != 1)
      throw validation_error("omega product takes exactly one factor");
    if (!expr.anchors.empty())
      throw validation_error("omega products use the default anchors");
    out.finite = false;
    auto f = factors[0];
    out.embed = [f](const PointExpr& p) {
      if (p.kind != PointKind::Tuple || !p.repeat || p.kids.empty())
        throw validation_error("omega product point must be a repeated tuple");
      std::vector<TransfiniteSeq> prefix;
      for (std::size_t i = 0; i + 1 < p.kids.size(); ++i)
        prefix.push_back(evenize(f.embed(p.kids[i])));
      return product_embed_omega(prefix, evenize(f.embed(p.kids.back())));
    };
    return out;
  }
  std::vector<Rat> anchors = expr.anchors;
  auto fs = std::make_shared<std::vector<CompiledOrder>>(std::move(factors));
  out.embed = [fs, anchors](const PointExpr& p) {
    if (p.kind != PointKind::Tuple || p.repeat || p.kids.size() != fs->size())
      throw validation_error("product point must be a tuple matching the factors");
    std::vector<TransfiniteSeq> images;
    for (std::size_t i = 0; i < fs->size(); ++i)
      images.push_back(evenize((*fs)[i].embed(p.kids[i])));
    return product_embed(images, anchors);
  };
  // lexicographic enumeration, leftmost factor most significant
  out.points.push_back(PointExpr{PointKind::Tuple, Rat(), 0, {}, false});
  for (const auto& f : *fs) {
    if (!f.finite) {
      out.finite = false;
      out.points.clear();
      return out;
    }
    std::vector<PointExpr> next;
    for (const auto& partial : out.points)
      for (const auto& q : f.points) {
        PointExpr t = partial;
        t.kids.push_back(q);
        next.push_back(std::move(t));
      }
    out.points = std::move(next);
  }
  return out;
}

inline CompiledOrder compile_glue(const OrderExpr& expr) {
  if (expr.children.empty()) throw validation_error("glue needs a base");
  CompiledOrder base = compile(expr.children[0]);
  if (!base.finite) throw validation_error("glue bases must be finite");
  if (expr.children.size() != base.points.size() + 1)
    throw validation_error("glue needs one fiber per base point");
  auto fibers = std::make_shared<std::vector<CompiledOrder>>();
  for (std::size_t i = 1; i < expr.children.size(); ++i)
    fibers->push_back(compile(expr.children[i]));
  auto base_ptr = std::make_shared<CompiledOrder>(std::move(base));
  CompiledOrder out;
  out.embed = [base_ptr, fibers](const PointExpr& p) {
    if (p.kind != PointKind::Pair || p.kids.size() != 2)
      throw validation_error("glue point must be a (base, fiber) pair");
    for (std::size_t i = 0; i < base_ptr->points.size(); ++i) {
      if (point_equal(base_ptr->points[i], p.kids[0])) {
        return glue_embed(evenize(base_ptr->embed(p.kids[0])),
                          (*fibers)[i].embed(p.kids[1]));
      }
    }
    throw validation_error("glue point's base component is not a base point");
  };
  for (std::size_t i = 0; i < base_ptr->points.size(); ++i) {
    if (!(*fibers)[i].finite) {
      out.finite = false;
      out.points.clear();
      return out;
    }
    for (const auto& q : (*fibers)[i].points) {
      PointExpr t;
      t.kind = PointKind::Pair;
      t.kids = {base_ptr->points[i], q};
      out.points.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace detail

inline CompiledOrder compile(const OrderExpr& expr) {
  CompiledOrder out;
  switch (expr.kind) {
    case ExprKind::Real: {
      out.finite = !expr.samples.empty();
      for (std::size_t i = 0; i < expr.samples.size(); ++i) {
        if (i > 0 && expr.samples[i] <= expr.samples[i - 1])
          throw validation_error("real samples must strictly increase");
        out.points.push_back(detail::real_point(expr.samples[i]));
      }
      out.embed = [](const PointExpr& p) {
        if (p.kind != PointKind::Real) throw validation_error("expected a real point");
        return embed_real(p.r);
      };
      return out;
    }
    case ExprKind::Chain: {
      if (expr.n == 0) throw validation_error("chain size must be positive");
      std::uint64_t n = expr.n;
      for (std::uint64_t i = 0; i < n; ++i) {
        PointExpr p;
        p.kind = PointKind::Index;
        p.index = i;
        out.points.push_back(std::move(p));
      }
      out.embed = [n](const PointExpr& p) {
        if (p.kind != PointKind::Index || p.index >= n)
          throw validation_error("chain point out of range");
        return embed_real(Rat(p.index + 1, n + 1));
      };
      return out;
    }
    case ExprKind::Product:
      return detail::compile_product(expr);
    case ExprKind::Glue:
      return detail::compile_glue(expr);
    case ExprKind::Duplicate: {
      if (expr.children.size() != 1) throw validation_error("duplicate takes one inner order");
      auto inner = std::make_shared<CompiledOrder>(compile(expr.children[0]));
      out.embed = [inner](const PointExpr& p) {
        if (p.kind != PointKind::Dup || p.kids.size() != 1 || p.index > 1)
          throw validation_error("duplicate point must be (point, bit)");
        return duplicate_embed(evenize(inner->embed(p.kids[0])), static_cast<unsigned>(p.index));
      };
      out.finite = inner->finite;
      for (const auto& q : inner->points)
        for (std::uint64_t bit = 0; bit < 2; ++bit) {
          PointExpr t;
          t.kind = PointKind::Dup;
          t.index = bit;
          t.kids = {q};
          out.points.push_back(std::move(t));
        }
      return out;
    }
    case ExprKind::Tree: {
      if (expr.tree.size() != 1) throw validation_error("partition tree needs a single root");
      TreeNode root = expr.tree[0];
      tree_validate(root);
      std::size_t leaves = tree_leaf_count(root);
      auto rp = std::make_shared<TreeNode>(std::move(root));
      for (std::size_t i = 0; i < leaves; ++i) {
        PointExpr p;
        p.kind = PointKind::Leaf;
        p.index = i;
        out.points.push_back(std::move(p));
      }
      out.embed = [rp](const PointExpr& p) {
        if (p.kind != PointKind::Leaf) throw validation_error("expected a leaf point");
        return tree_embed(*rp, p.index);
      };
      return out;
    }
  }
  throw internal_error("unhandled expression kind");
}

struct ChainReport {
  bool ok = true;
  std::size_t i = 0, j = 0;     // first violating pair when !ok
  bool equal_pair = false;
  Ordinal delta;
};

inline ChainReport verify_chain(const std::vector<TransfiniteSeq>& images) {
  for (std::size_t i = 0; i + 1 < images.size(); ++i) {
    auto r = altlex_compare(images[i], images[i + 1]);
    if (r.order != SeqOrdering::Less) {
      ChainReport rep;
      rep.ok = false;
      rep.i = i;
      rep.j = i + 1;
      rep.equal_pair = r.order == SeqOrdering::Equal;
      if (!rep.equal_pair) rep.delta = r.delta;
      return rep;
    }
  }
  return {};
}

}  // namespace altlex
