"""Clustering, bundled bijections, induced weights, and increasing diamonds."""

from fractions import Fraction

import pytest

from buckettrees import bijections, families
from buckettrees.bijections import (bucket_to_diamond, cluster,
                                    cluster_three_bundled, cluster_two_bundled,
                                    composite, decode_diamond, diamond_to_bucket,
                                    encode_diamond, expand_chains, inner_node,
                                    uncluster_three_bundled,
                                    uncluster_two_bundled,
                                    weight_preserving_phi)
from buckettrees.enumeration import all_trees, distinct_unordered, enumerate_trees
from buckettrees.trees import BundledNode, decode, encode


def test_cluster_path_and_star():
    path = decode("{1}({2}({3}))", 1)
    star = decode("{1}({2},{3})", 1)
    assert encode(cluster(path, 2)) == "{1,2}({3})"
    assert encode(cluster(star, 2)) == "{1,2}({3})"


def test_cluster_guards():
    with pytest.raises(ValueError):
        cluster(decode("{1}", 1), 1)
    with pytest.raises(ValueError):
        cluster(decode("{1,2}", 2), 2)


def test_expand_chains_is_right_inverse():
    for b in (2, 3):
        for n in range(1, 6):
            for tree in all_trees(b, n):
                assert cluster(expand_chains(tree), b).root == tree.root


def test_three_bundled_examples():
    path = decode("{1}({2}({3}))", 1)
    star = decode("{1}({2},{3})", 1)
    leaf = BundledNode((3,))
    assert cluster_three_bundled(path).root == BundledNode((1, 2), ((), (leaf,), ()))
    assert cluster_three_bundled(star).root == BundledNode((1, 2), ((), (), (leaf,)))


def test_two_bundled_example():
    star = decode("{1}({2},{3})", 1)
    leaf = BundledNode((3,))
    assert cluster_two_bundled(star).root == BundledNode((1, 2), ((leaf,), ()))


def test_two_bundled_requires_canonical():
    tree = decode("{1}({3},{2})", 1)
    with pytest.raises(ValueError, match="canonical"):
        cluster_two_bundled(tree)


def test_bundled_round_trips():
    for n in range(1, 6):
        for tree in all_trees(1, n):
            bt = cluster_three_bundled(tree)
            assert uncluster_three_bundled(bt).root == tree.root
        for tree in distinct_unordered(enumerate_trees(families.recursive(1), n)):
            bt = cluster_two_bundled(tree)
            assert uncluster_two_bundled(bt).root == tree.root


def test_weight_preserving_phi_matches_named_families():
    for base, target in ((families.recursive(1), families.recursive(2)),
                         (families.ary(1, 2), families.ary(2, 2)),
                         (families.port(1, 1), families.port(2, 1))):
        phi1 = lambda k, s=base: families.phi(s, k)
        for k in range(5):
            assert weight_preserving_phi(phi1, 2, k) == families.phi(target, k)


def test_diamond_codec_round_trip():
    d = composite(1, 6, (inner_node(2), composite(3, 5, (inner_node(4),))))
    text = encode_diamond(d)
    assert text == "<1 6>((2),<3 5>((4)))"
    assert decode_diamond(text) == d


def test_diamond_validation():
    with pytest.raises(ValueError):
        composite(2, 1, ())  # source must be the minimum
    with pytest.raises(ValueError):
        composite(1, 3, (inner_node(3),))  # duplicate label
    with pytest.raises(ValueError):
        decode_diamond("<1 2>((3))")  # sink is not the maximum


def test_diamond_bijection_round_trip():
    for n in range(1, 6):
        seen = set()
        for tree in all_trees(2, n):
            d = bucket_to_diamond(tree)
            assert diamond_to_bucket(d).root == tree.root
            assert d.inner_count() == sum(
                1 for v in _buckets(tree) if len(v.labels) == 1)
            seen.add(encode_diamond(d))
        assert len(seen) == len(all_trees(2, n))


def _buckets(tree):
    from buckettrees.trees import iter_nodes
    return list(iter_nodes(tree.root))


def test_weighted_diamond_count_small():
    # composite weight C(k+2, k) pulls the (2,1)-PORT totals through the map
    import math

    def weight(d):
        if d.inner is not None:
            return Fraction(1)
        k = len(d.parts)
        w = Fraction((k + 1) * (k + 2), 2)
        for p in d.parts:
            w *= weight(p)
        return w

    for n in range(1, 6):
        total = sum(weight(bucket_to_diamond(t)) for t in all_trees(2, n))
        assert total == math.prod(range(2 * n - 3, 0, -2))


def test_diamond_needs_b2():
    with pytest.raises(ValueError):
        bucket_to_diamond(decode("{1}", 1))
