from collections import Counter

import numpy as np
import pytest

from core import ConfigurationError, DataError, validate_partitions
from datagen import CLUSTERED, GenSpec, generate, key_name, load_csv, write_csv, zipf_ranks


def _key_counts(partitions):
    return Counter(e.key for p in partitions for e in p)


def test_empty_dataset():
    assert generate(GenSpec(n=0, m=3)) == [[], [], []]
    assert generate(GenSpec(n=0, m=2, placement=CLUSTERED)) == [[], []]


def test_uniform_keys_without_skew():
    partitions = generate(GenSpec(n=20_000, distinct_keys=4, zipf_s=0.0, m=4, seed=7))
    counts = _key_counts(partitions)
    assert len(counts) == 4
    assert all(4500 <= count <= 5500 for count in counts.values())


def test_zipf_skew_favours_low_ranks():
    counts = _key_counts(generate(GenSpec(n=50_000, distinct_keys=10, zipf_s=1.0, m=2, seed=8)))
    expected_top = 50_000 / sum(1 / k for k in range(1, 11))
    assert counts["k0"] == pytest.approx(expected_top, rel=0.05)
    assert counts["k0"] > counts["k1"] > counts["k3"] > counts["k9"]


@pytest.mark.parametrize("seed", [1, 2, 3, 4, 5])
def test_larger_zipf_exponent_grows_largest_block(seed):
    n = 5000
    shares = []
    for zipf_s in (0.0, 0.5, 1.0, 1.5, 2.0):
        counts = _key_counts(generate(GenSpec(n=n, distinct_keys=50, zipf_s=zipf_s, m=2, seed=seed)))
        shares.append(max(counts.values()) / n)
    assert shares == sorted(shares)
    assert len(set(shares)) == len(shares)


def test_zipf_ranks_stay_in_range():
    ranks = zipf_ranks(np.random.default_rng(1), 5, 2.0, 1000)
    assert ranks.min() >= 0 and ranks.max() <= 4


def test_generation_is_deterministic():
    spec = GenSpec(n=500, distinct_keys=20, zipf_s=1.2, m=3, seed=9)
    assert generate(spec) == generate(spec)
    assert generate(spec) != generate(GenSpec(n=500, distinct_keys=20, zipf_s=1.2, m=3, seed=10))


def test_round_robin_placement():
    partitions = generate(GenSpec(n=10, m=3))
    validate_partitions(partitions, 3)
    assert [[e.id for e in p] for p in partitions] == [[0, 3, 6, 9], [1, 4, 7], [2, 5, 8]]


def test_clustered_placement_keeps_keys_together():
    partitions = generate(GenSpec(n=400, distinct_keys=30, zipf_s=0.8, m=4, seed=11, placement=CLUSTERED))
    validate_partitions(partitions, 4)
    assert [len(p) for p in partitions] == [100, 100, 100, 100]
    for left, right in zip(partitions, partitions[1:]):
        assert max(e.key for e in left) <= min(e.key for e in right)


def test_payloads_have_requested_length():
    partitions = generate(GenSpec(n=50, m=1, attr_len=7))
    assert all(len(e.attrs[0]) == 7 for e in partitions[0])


def test_key_names_sort_by_rank():
    names = [key_name(rank, 120) for rank in range(120)]
    assert names[0] == "k000"
    assert names == sorted(names)
    assert key_name(0, 1) == "k0"


@pytest.mark.parametrize(
    "kwargs",
    [{"n": -1}, {"n": 1, "distinct_keys": 0}, {"n": 1, "zipf_s": -0.5}, {"n": 1, "m": 0}, {"n": 1, "placement": "random"}],
)
def test_gen_spec_validation(kwargs):
    with pytest.raises(ConfigurationError):
        GenSpec(**kwargs)


def test_load_csv_deals_rows_round_robin(tmp_path):
    path = tmp_path / "people.csv"
    path.write_text("name,surname,city\nann,smith,oslo\nbob,jones,rome\ncid,smith,lima\n", encoding="utf-8")
    partitions = load_csv(str(path), "surname", 2)
    assert [len(p) for p in partitions] == [2, 1]
    first = partitions[0][0]
    assert (first.id, first.partition, first.key, first.attrs) == (0, 0, "smith", ("ann", "oslo"))
    assert partitions[1][0].key == "jones"


def test_load_csv_header_only(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("key,value\n", encoding="utf-8")
    assert load_csv(str(path), "key", 3) == [[], [], []]


def test_load_csv_missing_column(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text("a,b\n1,2\n", encoding="utf-8")
    with pytest.raises(DataError, match="surname"):
        load_csv(str(path), "surname", 1)


def test_load_csv_malformed_row(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("key,value\nx,1\ny,2,3\n", encoding="utf-8")
    with pytest.raises(DataError):
        load_csv(str(path), "key", 1)


@pytest.mark.parametrize("body", ["a,x,extra\nb,y,z\n", "a,x,extra\nb,y\n"])
def test_load_csv_overlong_first_row(tmp_path, body):
    path = tmp_path / "wide.csv"
    path.write_text("key,name\n" + body, encoding="utf-8")
    with pytest.raises(DataError, match="malformed row"):
        load_csv(str(path), "key", 1)


def test_load_csv_keeps_key_column_with_trailing_comma(tmp_path):
    path = tmp_path / "trailing.csv"
    path.write_text("key,name\na,x,\nb,y,\n", encoding="utf-8")
    partitions = load_csv(str(path), "key", 1)
    assert [(e.key, e.attrs) for e in partitions[0]] == [("a", ("x",)), ("b", ("y",))]


def test_load_csv_missing_file(tmp_path):
    with pytest.raises(DataError):
        load_csv(str(tmp_path / "nope.csv"), "key", 1)


def test_load_csv_directory(tmp_path):
    with pytest.raises(DataError, match="cannot read"):
        load_csv(str(tmp_path), "key", 1)


def test_csv_round_trip(tmp_path):
    partitions = generate(GenSpec(n=200, distinct_keys=15, m=3, seed=12))
    path = tmp_path / "dataset.csv"
    write_csv(partitions, str(path))
    assert load_csv(str(path), "key", 3) == partitions
