import random

import pytest

from idpos.splitter import SplitIdentifier, UnsplittableIdentifier, split


@pytest.mark.parametrize(
    "raw,expected",
    [
        ("GetUserToken", ["Get", "User", "Token"]),
        ("tile_list_head", ["tile", "list", "head"]),
        ("IPV4", ["IPV4"]),
        ("x", ["x"]),
        ("GetXMLReaderHandler", ["Get", "XML", "Reader", "Handler"]),
        ("user2name", ["user", "2", "name"]),
        ("XML_Reader", ["XML", "Reader"]),
        ("drawContentBorder", ["draw", "Content", "Border"]),
        ("m_count", ["m", "count"]),
        ("GL2Handler", ["GL2", "Handler"]),
        ("getIPV4", ["get", "IPV4"]),
        ("HTTPSProxy2", ["HTTPS", "Proxy", "2"]),
        ("value3", ["value", "3"]),
        ("__flags__", ["flags"]),
        ("MAX_TILE_SIZE", ["MAX", "TILE", "SIZE"]),
    ],
)
def test_split_examples(raw, expected):
    assert list(split(raw).words) == expected


def test_positions_are_one_based():
    result = split("GetUserToken")
    assert result.positions == (1, 2, 3)
    assert len(result) == 3


def test_no_alphanumerics_is_an_error():
    for raw in ("", "___", "-->", "  "):
        with pytest.raises(UnsplittableIdentifier):
            split(raw)


def test_single_words_are_fixed_points():
    for word in ("value", "Reader", "XML", "x", "IPV4", "handler"):
        first = split(word)
        again = split(first.words[0])
        assert list(again.words) == [word]


def _random_identifier(rng: random.Random) -> str:
    words = [
        rng.choice(["get", "user", "token", "xml", "http", "max", "value",
                    "tile", "list", "head", "draw", "border", "idx", "ipv4",
                    "gl2", "a"])
        for _ in range(rng.randint(1, 5))
    ]
    style = rng.choice(["snake", "camel", "pascal", "upper", "mixed"])
    if style == "snake":
        joined = "_".join(words)
    elif style == "upper":
        joined = "_".join(w.upper() for w in words)
    else:
        parts = []
        for i, word in enumerate(words):
            if style == "camel" and i == 0:
                parts.append(word)
            elif style == "mixed" and rng.random() < 0.3:
                parts.append(word.upper())
            else:
                parts.append(word.capitalize())
        joined = "".join(parts)
    if rng.random() < 0.2:
        # digits wedged between words, not only at the end
        cut = rng.randrange(len(joined))
        joined = joined[:cut] + str(rng.randint(0, 99)) + joined[cut:]
    if rng.random() < 0.3:
        joined += str(rng.randint(0, 99))
    if rng.random() < 0.2:
        joined = rng.choice(["m_", "g_", "p_"]) + joined
    return joined


def test_roundtrip_content_property():
    # Case-folded concatenation of words equals the case-folded
    # alphanumeric content of the raw identifier.
    rng = random.Random(1234)
    for _ in range(10_000):
        raw = _random_identifier(rng)
        result = split(raw)
        alnum = "".join(c for c in raw if c.isalnum()).casefold()
        assert "".join(result.words).casefold() == alnum
        assert result.positions == tuple(range(1, len(result.words) + 1))
        assert all(result.words)


def test_split_is_deterministic():
    assert split("GetUserToken") == split("GetUserToken")
    assert split("a_b") == SplitIdentifier(raw="a_b", words=("a", "b"))


def test_non_ascii_characters_act_as_delimiters():
    assert list(split("größeWert").words) == ["gr", "e", "Wert"]
    with pytest.raises(UnsplittableIdentifier):
        split("äöü")
