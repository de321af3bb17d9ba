import networkx as nx
import pytest
from hypothesis import given, settings

from posetlab.embed import (
    InclusionBigraph,
    build_inclusion_bigraph,
    check_embedding,
    creates_copy_through,
    find_colored_copy,
    find_copy,
    find_copy_bruteforce,
    greedy_tree_embed,
    is_copy_image,
    min_degree_subgraph,
    validate_coloring,
)
from posetlab.errors import (
    AlreadyMember,
    EmbedFailed,
    InvalidColoring,
    InvalidParam,
    NotGraded,
)
from posetlab.family import SetFamily, full_layer, middle_layers
from posetlab.poset import (
    all_height2_tree_posets,
    chain,
    complete_multilevel,
    poset_from_covers,
    rank_coloring,
    y_poset,
    y_prime_poset,
)
from strategies import families, random_family, random_graded_poset

C2 = chain(2)
Y12 = y_poset(1, 2)
Y22 = y_poset(2, 2)


def test_weak_copy_of_chain():
    fam = SetFamily(1, (0, 1))
    emb = find_copy(fam, C2, "weak")
    assert emb.mapping == {"x1": 0, "x2": 1}


def test_y12_weak_found_rank_preserving_not():
    fam = SetFamily.from_sets(3, [[1], [1, 2], [1, 2, 3]])
    assert find_copy(fam, Y12, "weak") is not None
    assert find_copy(fam, Y12, "rank_preserving") is None


def test_y22_rank_preserving_witness():
    fam = SetFamily.from_sets(4, [[1], [1, 2], [1, 2, 3], [1, 2, 4]])
    emb = find_copy(fam, Y22, "rank_preserving")
    assert emb is not None
    assert check_embedding(Y22, emb.mapping, "rank_preserving", family=fam)


def test_rank_preserving_needs_graded():
    p = poset_from_covers("abcd", [("a", "b"), ("b", "d"), ("c", "d")])
    with pytest.raises(NotGraded):
        find_copy(SetFamily(4, (1, 3, 7, 15)), p, "rank_preserving")


def test_unknown_mode():
    with pytest.raises(InvalidParam):
        find_copy(SetFamily(2, ()), C2, "strong")


def test_colored_copy_rank_coloring_matches_rank_preserving():
    fam = SetFamily.from_sets(4, [[1], [1, 2], [1, 2, 3], [1, 2, 4]])
    rp = find_copy(fam, Y22, "rank_preserving")
    colored = find_colored_copy(fam, Y22, rank_coloring(Y22))
    assert colored.mapping == rp.mapping
    assert colored.mode == "colored"


def test_colored_copy_distinct_top_colors_degenerates_to_weak():
    fam = SetFamily.from_sets(3, [[1], [1, 2], [1, 2, 3]])
    coloring = {"x1": 0, "y1": 1, "y2": 2}
    assert find_colored_copy(fam, Y12, coloring) is not None


def test_invalid_coloring_comparable_pair():
    coloring = {"x1": 0, "x2": 0, "y1": 1, "y2": 1}
    with pytest.raises(InvalidColoring):
        find_colored_copy(middle_layers(4, 2), Y22, coloring)
    with pytest.raises(InvalidColoring):
        validate_coloring(Y22, {"x1": 0})
    with pytest.raises(InvalidColoring):
        find_copy(middle_layers(4, 2), Y22, "colored")


def test_induced_vs_weak():
    # a 3-chain contains weak Y'(1,2) images but no induced copy needs
    # incomparable tops; the N poset separates the modes
    n_poset = poset_from_covers("abcd", [("a", "b"), ("c", "b"), ("c", "d")])
    fam_chain = SetFamily.from_sets(4, [[1], [1, 2], [1, 2, 3], [1, 2, 3, 4]])
    assert find_copy(fam_chain, n_poset, "weak") is not None
    assert find_copy(fam_chain, n_poset, "induced") is None
    fam_real = SetFamily.from_sets(4, [[1], [2], [1, 2], [1, 3]])
    emb = find_copy(fam_real, n_poset, "induced")
    assert emb is not None
    assert check_embedding(n_poset, emb.mapping, "induced", family=fam_real)


def test_creates_copy_through_examples():
    emb = creates_copy_through(middle_layers(4, 2), Y22, "rank_preserving", 0b0001)
    assert emb is not None
    assert 0b0001 in emb.mapping.values()
    assert creates_copy_through(SetFamily(2, (1,)), C2, "weak", 2) is None
    with pytest.raises(AlreadyMember):
        creates_copy_through(SetFamily(2, (1,)), C2, "weak", 1)


def test_creates_copy_through_matches_filtered_find_copy(rng):
    for _ in range(150):
        fam = random_family(rng, 4, 8)
        poset = random_graded_poset(rng, 4)
        mode = rng.choice(("weak", "induced", "rank_preserving"))
        outside = [m for m in range(16) if m not in fam]
        if not outside:
            continue
        s = rng.choice(outside)
        through = creates_copy_through(fam, poset, mode, s)
        aug = fam.with_member(s)
        brute = None
        from itertools import combinations, permutations

        for combo in combinations(aug.members, len(poset.elements)):
            if s not in combo:
                continue
            if is_copy_image(combo, poset, mode):
                brute = combo
                break
        assert (through is None) == (brute is None)
        if through is not None:
            assert s in through.mapping.values()
            assert check_embedding(poset, through.mapping, mode, family=aug)


@settings(max_examples=40)
@given(families(max_n=5, max_size=14))
def test_mode_hierarchy_weak_free_implies_rank_preserving_free(fam):
    for poset in (Y12, Y22, C2):
        if find_copy(fam, poset, "weak") is None:
            assert find_copy(fam, poset, "rank_preserving") is None


def test_rank_preserving_witness_satisfies_weak_conditions(rng):
    for _ in range(80):
        fam = random_family(rng, 4, 10)
        emb = find_copy(fam, Y22, "rank_preserving")
        if emb is not None:
            assert check_embedding(Y22, emb.mapping, "weak", family=fam)


def test_complete_multilevel_rank_preserving_witness_is_induced(rng):
    butterfly = complete_multilevel([2, 2])
    diamond = complete_multilevel([1, 2, 1])
    for _ in range(120):
        fam = random_family(rng, 5, 14)
        for poset in (butterfly, diamond):
            emb = find_copy(fam, poset, "rank_preserving")
            if emb is not None:
                assert check_embedding(poset, emb.mapping, "induced", family=fam)


def test_monotonicity_adding_sets_preserves_copies(rng):
    for _ in range(80):
        fam = random_family(rng, 4, 9)
        poset = random_graded_poset(rng, 4)
        if find_copy(fam, poset, "weak") is None:
            continue
        outside = [m for m in range(16) if m not in fam]
        if not outside:
            continue
        bigger = fam.with_member(rng.choice(outside))
        assert find_copy(bigger, poset, "weak") is not None


def test_find_copy_agrees_with_bruteforce(rng):
    for _ in range(400):
        fam = random_family(rng, 4, 8)
        poset = random_graded_poset(rng, 4)
        mode = rng.choice(("weak", "induced", "rank_preserving", "colored"))
        coloring = rank_coloring(poset) if mode == "colored" else None
        fast = find_copy(fam, poset, mode, coloring)
        slow = find_copy_bruteforce(fam, poset, mode, coloring)
        assert (fast is None) == (slow is None)
        if fast is not None:
            assert check_embedding(poset, fast.mapping, mode, coloring, fam)
            assert check_embedding(poset, slow.mapping, mode, coloring, fam)


def test_check_embedding_rejects_bad_witnesses():
    fam = SetFamily.from_sets(3, [[1], [1, 2], [1, 2, 3]])
    assert not check_embedding(C2, {"x1": 3, "x2": 1}, "weak", family=fam)
    assert not check_embedding(C2, {"x1": 1, "x2": 1}, "weak", family=fam)
    assert not check_embedding(C2, {"x1": 1}, "weak", family=fam)
    assert not check_embedding(C2, {"x1": 1, "x2": 16}, "weak", family=fam)


# ---------------------------------------------------------------------------
# Inclusion bigraphs.

def test_bigraph_full_layers_of_4():
    g = build_inclusion_bigraph(middle_layers(4, 2), 2, 3)
    assert g.edge_count == 12


def test_bigraph_empty_side():
    g = build_inclusion_bigraph(middle_layers(4, 1), 2, 3)
    assert g.edge_count == 0
    assert g.right == ()


def test_bigraph_middle_layers_of_5():
    g = build_inclusion_bigraph(middle_layers(5, 2), 2, 3)
    assert g.edge_count == 30


def test_bigraph_validation():
    with pytest.raises(InvalidParam):
        build_inclusion_bigraph(middle_layers(4, 2), 3, 2)
    with pytest.raises(InvalidParam):
        InclusionBigraph((0b011, 0b111), (0b1111,))


def test_min_degree_subgraph_keeps_k33():
    left = (0b000001, 0b000010, 0b000100)
    right = tuple(0b000111 | 1 << i for i in (3, 4, 5))
    g = InclusionBigraph(left, right)
    core = min_degree_subgraph(g, 2)
    assert core.left == left and core.right == right


def test_min_degree_subgraph_path_dies():
    # path with 3 edges: {1}-{1,2}, {2}-{1,2}, {2}-{2,3}
    g = InclusionBigraph((0b001, 0b010), (0b011, 0b110))
    assert g.edge_count == 3
    core = min_degree_subgraph(g, 2)
    assert core.vertex_count == 0


def test_min_degree_subgraph_matches_networkx(rng):
    for _ in range(60):
        n = rng.randint(4, 7)
        i = rng.randint(1, n - 2)
        j = rng.randint(i + 1, n - 1)
        left = [m for m in full_layer(n, i) if rng.random() < 0.6]
        right = [m for m in full_layer(n, j) if rng.random() < 0.6]
        g = InclusionBigraph(tuple(left), tuple(right))
        d = rng.randint(1, 4)
        core = min_degree_subgraph(g, d)
        nxg = nx.Graph()
        nxg.add_nodes_from(("L", m) for m in g.left)
        nxg.add_nodes_from(("R", m) for m in g.right)
        for li, nbrs in enumerate(g.left_adj):
            for ri in nbrs:
                nxg.add_edge(("L", g.left[li]), ("R", g.right[ri]))
        nxcore = nx.k_core(nxg, d)
        assert set(core.left) == {m for s, m in nxcore.nodes if s == "L"}
        assert set(core.right) == {m for s, m in nxcore.nodes if s == "R"}


def test_average_degree_threshold_gives_nonempty_core(rng):
    for _ in range(60):
        d = rng.randint(2, 4)
        n = rng.randint(5, 8)
        i = rng.randint(1, n - 3)
        j = rng.randint(i + 1, n - 1)
        left = [m for m in full_layer(n, i) if rng.random() < 0.8]
        right = [m for m in full_layer(n, j) if rng.random() < 0.8]
        g = InclusionBigraph(tuple(left), tuple(right))
        if g.vertex_count and g.average_degree() > 2 * (d - 1):
            assert min_degree_subgraph(g, d).vertex_count > 0


def test_greedy_embed_star_into_k33():
    left = (0b000001, 0b000010, 0b000100)
    right = tuple(0b000111 | 1 << i for i in (3, 4, 5))
    g = InclusionBigraph(left, right)
    emb = greedy_tree_embed(g, y_poset(1, 3))
    assert check_embedding(y_poset(1, 3), emb.mapping, "rank_preserving")


def test_greedy_embed_fails_on_single_edge():
    g = InclusionBigraph((0b001,), (0b011,))
    with pytest.raises(EmbedFailed):
        greedy_tree_embed(g, y_poset(1, 3))


def test_greedy_embed_rejects_non_tree_input():
    g = InclusionBigraph((0b001,), (0b011,))
    with pytest.raises(InvalidParam):
        greedy_tree_embed(g, complete_multilevel([2, 2]))
    with pytest.raises(InvalidParam):
        greedy_tree_embed(g, chain(3))


def test_greedy_embed_min_degree_guarantee(rng):
    # any 4-element height-2 tree embeds once the minimum degree is >= 3
    trees = all_height2_tree_posets(4)
    for _ in range(40):
        n = rng.randint(6, 8)
        i = rng.randint(1, n - 4)
        j = rng.randint(i + 2, n - 1)
        left = [m for m in full_layer(n, i) if rng.random() < 0.85]
        right = [m for m in full_layer(n, j) if rng.random() < 0.85]
        core = min_degree_subgraph(InclusionBigraph(tuple(left), tuple(right)), 3)
        if core.vertex_count == 0:
            continue
        for tree in trees:
            emb = greedy_tree_embed(core, tree)
            assert check_embedding(tree, emb.mapping, "rank_preserving")
            masks = set(emb.mapping.values())
            assert masks <= set(core.left) | set(core.right)


def test_dual_poset_copy_symmetry(rng):
    # F contains a weak copy of P iff the complement family contains dual(P)
    from posetlab.poset import dual

    for _ in range(60):
        fam = random_family(rng, 4, 10)
        poset = random_graded_poset(rng, 4)
        comp = SetFamily(4, tuple(m ^ 0b1111 for m in fam.members))
        a = find_copy(fam, poset, "weak") is not None
        b = find_copy(comp, dual(poset), "weak") is not None
        assert a == b
