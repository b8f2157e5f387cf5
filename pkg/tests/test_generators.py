import pytest

from covert_setcover.generators import gen_graph, gen_set_system
from covert_setcover.setsystem import verify_cover


class TestGraphModels:
    def test_path(self):
        assert gen_graph("path", n=4).edges() == [(1, 2), (2, 3), (3, 4)]

    def test_cycle(self):
        assert len(gen_graph("cycle", n=5).edges()) == 5

    def test_complete(self):
        assert len(gen_graph("complete", n=4).edges()) == 6

    def test_star(self):
        star = gen_graph("star", n=5)
        assert all(1 in edge for edge in star.edges())
        assert len(star.edges()) == 4

    def test_grid(self):
        grid = gen_graph("grid", rows=2, cols=3)
        assert grid.n == 6
        assert len(grid.edges()) == 7

    def test_er_connected_and_reproducible(self):
        a = gen_graph("er-connected", n=12, p=0.25, seed=7)
        b = gen_graph("er-connected", n=12, p=0.25, seed=7)
        assert a.is_connected()
        assert a == b

    def test_er_different_seeds_differ(self):
        a = gen_graph("er-connected", n=12, p=0.3, seed=1)
        b = gen_graph("er-connected", n=12, p=0.3, seed=2)
        assert a != b

    def test_unknown_model(self):
        with pytest.raises(ValueError, match="unknown graph model"):
            gen_graph("torus", n=4)

    def test_bad_params(self):
        with pytest.raises(ValueError):
            gen_graph("path", n=1)
        with pytest.raises(ValueError):
            gen_graph("er-connected", n=5, p=1.5)

    def test_er_retry_budget_exhausted(self):
        with pytest.raises(RuntimeError, match="no connected sample"):
            gen_graph("er-connected", n=3, p=0.0, seed=1)


class TestSetModels:
    def test_planted_cover_plants_a_real_cover(self):
        for seed in range(10):
            system, meta = gen_set_system("planted-cover", n=32, m=10, seed=seed, k=4)
            assert meta["coverable"]
            assert len(meta["planted_indices"]) == 4
            assert verify_cover(system, meta["planted_indices"])

    def test_planted_cover_infeasible_params(self):
        with pytest.raises(ValueError):
            gen_set_system("planted-cover", n=4, m=8, seed=0, k=5)

    def test_uniform_random_flags_uncoverable(self):
        system, meta = gen_set_system("uniform-random", n=40, m=2, seed=3, density=0.05)
        union = set().union(*system.sets)
        assert meta["coverable"] == (len(union) == 40)

    def test_skewed_sizes_span_scales(self):
        system, meta = gen_set_system("skewed", n=64, m=20, seed=5)
        sizes = {len(s) for s in system.sets}
        assert len(sizes) > 2
        assert meta["coverable"] in (True, False)

    def test_identical_seeds_identical_systems(self):
        a, meta_a = gen_set_system("uniform-random", n=20, m=8, seed=11)
        b, meta_b = gen_set_system("uniform-random", n=20, m=8, seed=11)
        assert a == b
        assert meta_a == meta_b

    def test_unknown_model(self):
        with pytest.raises(ValueError, match="unknown set model"):
            gen_set_system("zipf", n=10, m=4)
