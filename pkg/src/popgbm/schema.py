"""Feature taxonomy: the seven feature groups, column specs, and group masks.

Every feature column belongs to exactly one of seven groups, identified by a
single letter code. A model is identified by the subset of groups it was
trained on, written as concatenated letters in the canonical order
``Y I E P A C T`` (e.g. ``"IACT"``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

# Canonical group order used for rendering masks and for column layout.
GROUP_ORDER = "YIEPACT"

GROUP_NAMES = {
    "Y": "YOLOv3",
    "I": "IIPA",
    "E": "EfficientNet",
    "P": "Places365",
    "A": "Author",
    "C": "Content",
    "T": "Temporal",
}

KINDS = ("continuous", "ordinal", "categorical")

SCHEMA_VERSION = 1

TARGET_NAME = "likes"


class MaskError(ValueError):
    """Raised for malformed group-mask strings."""


@dataclass(frozen=True)
class ColumnSpec:
    name: str
    group: str
    kind: str
    cardinality: int | None = None

    def __post_init__(self) -> None:
        if self.group not in GROUP_ORDER:
            raise ValueError(f"unknown group code {self.group!r}")
        if self.kind not in KINDS:
            raise ValueError(f"unknown column kind {self.kind!r}")
        if self.kind == "categorical":
            if self.cardinality is None or self.cardinality < 2:
                raise ValueError(f"categorical column {self.name!r} needs cardinality >= 2")
        elif self.cardinality is not None:
            raise ValueError(f"non-categorical column {self.name!r} must not set cardinality")


@dataclass(frozen=True)
class FeatureSchema:
    """An ordered set of feature columns plus the target column name."""

    columns: tuple[ColumnSpec, ...]
    target_name: str = TARGET_NAME

    def __post_init__(self) -> None:
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            raise ValueError("duplicate column names in schema")
        if self.target_name in names:
            raise ValueError("target name collides with a feature column")

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.columns]

    @property
    def n_columns(self) -> int:
        return len(self.columns)

    def column(self, name: str) -> ColumnSpec:
        for c in self.columns:
            if c.name == name:
                return c
        raise KeyError(name)

    def index_of(self, name: str) -> int:
        for i, c in enumerate(self.columns):
            if c.name == name:
                return i
        raise KeyError(name)

    def group_sizes(self) -> dict[str, int]:
        sizes = {g: 0 for g in GROUP_ORDER}
        for c in self.columns:
            sizes[c.group] += 1
        return sizes

    def groups_present(self) -> "GroupMask":
        return GroupMask(frozenset(c.group for c in self.columns))

    def hash(self) -> int:
        return schema_hash(self)

    def to_dict(self) -> dict:
        """JSON-ready description, embedded in dataset sidecars and model files."""
        return {
            "schema_version": SCHEMA_VERSION,
            "target": self.target_name,
            "columns": [
                {
                    "name": c.name,
                    "group": c.group,
                    "kind": c.kind,
                    **({"cardinality": c.cardinality} if c.cardinality is not None else {}),
                }
                for c in self.columns
            ],
        }

    @staticmethod
    def from_dict(doc: dict) -> "FeatureSchema":
        if doc.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {doc.get('schema_version')!r}")
        cols = tuple(
            ColumnSpec(d["name"], d["group"], d["kind"], d.get("cardinality"))
            for d in doc["columns"]
        )
        return FeatureSchema(cols, doc.get("target", TARGET_NAME))


@dataclass(frozen=True)
class GroupMask:
    """A non-empty subset of the seven group codes."""

    included: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not self.included:
            raise MaskError("group mask must be non-empty")
        bad = self.included - set(GROUP_ORDER)
        if bad:
            raise MaskError(f"unknown group codes: {sorted(bad)}")

    def __contains__(self, code: str) -> bool:
        return code in self.included

    def __or__(self, other: "GroupMask") -> "GroupMask":
        return GroupMask(self.included | other.included)

    def render(self) -> str:
        return "".join(g for g in GROUP_ORDER if g in self.included)

    def __str__(self) -> str:
        return self.render()


def parse_mask(text: str) -> GroupMask:
    """Parse a mask string like ``"ACT"`` or ``"yiepact"``; case-insensitive.

    Raises ``MaskError`` naming the first unknown or duplicated letter.
    """
    if not text:
        raise MaskError("empty group mask")
    seen: set[str] = set()
    for ch in text:
        code = ch.upper()
        if code not in GROUP_ORDER:
            raise MaskError(f"unknown group code {ch!r}")
        if code in seen:
            raise MaskError(f"duplicate group code {ch!r}")
        seen.add(code)
    return GroupMask(frozenset(seen))


def _places_columns() -> list[ColumnSpec]:
    cols = [ColumnSpec(f"p_scn_{i:03d}", "P", "continuous") for i in range(365)]
    cols += [ColumnSpec(f"p_att_{i:03d}", "P", "continuous") for i in range(102)]
    # Indoor/outdoor flag kept continuous in [0, 1] rather than categorical.
    cols.append(ColumnSpec("p_env", "P", "continuous"))
    return cols


# Content column ranges follow the upstream extraction conventions:
# filter codes 0..41, language codes 0..72, binary flags as 2-way categoricals.
_CONTENT_COLUMNS = [
    ColumnSpec("c_filter", "C", "categorical", 42),
    ColumnSpec("c_users_tagged", "C", "ordinal"),
    ColumnSpec("c_user_has_liked", "C", "categorical", 2),
    ColumnSpec("c_has_geolocation", "C", "categorical", 2),
    ColumnSpec("c_language", "C", "categorical", 73),
    ColumnSpec("c_is_english", "C", "categorical", 2),
    ColumnSpec("c_hashtag_count", "C", "ordinal"),
    ColumnSpec("c_word_count", "C", "ordinal"),
    ColumnSpec("c_body_length", "C", "ordinal"),
]

_AUTHOR_COLUMNS = [
    ColumnSpec("a_followers", "A", "ordinal"),
    ColumnSpec("a_following", "A", "ordinal"),
    ColumnSpec("a_posts", "A", "ordinal"),
    ColumnSpec("a_follower_per_post", "A", "continuous"),
    ColumnSpec("a_follower_per_following", "A", "continuous"),
]

_TEMPORAL_COLUMNS = [
    ColumnSpec("t_day", "T", "ordinal"),
    ColumnSpec("t_weekday", "T", "categorical", 7),
    ColumnSpec("t_hour", "T", "ordinal"),
]


def canonical_schema() -> FeatureSchema:
    """The full 1566-column schema: Y(80) I(1) E(1000) P(468) A(5) C(9) T(3).

    Columns are laid out group by group in canonical mask order, so projecting
    onto any mask preserves a stable relative order.
    """
    cols: list[ColumnSpec] = []
    cols += [ColumnSpec(f"y_{i:02d}", "Y", "ordinal") for i in range(80)]
    cols.append(ColumnSpec("iipa", "I", "continuous"))
    cols += [ColumnSpec(f"e_{i:04d}", "E", "continuous") for i in range(1000)]
    cols += _places_columns()
    cols += _AUTHOR_COLUMNS
    cols += _CONTENT_COLUMNS
    cols += _TEMPORAL_COLUMNS
    return FeatureSchema(tuple(cols))


def project(schema: FeatureSchema, mask: GroupMask) -> FeatureSchema:
    """Sub-schema containing exactly the columns whose group is in ``mask``.

    Column order is preserved; the target column is retained.
    """
    cols = tuple(c for c in schema.columns if c.group in mask)
    return FeatureSchema(cols, schema.target_name)


_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def schema_hash(schema: FeatureSchema) -> int:
    """64-bit FNV-1a over ``name:kind`` pairs plus the target name.

    Stable across runs and platforms; stored in dataset sidecars and model
    files to detect schema drift.
    """
    h = _FNV_OFFSET
    payload = "\n".join(f"{c.name}:{c.kind}" for c in schema.columns)
    payload += f"\n->{schema.target_name}"
    for byte in payload.encode("utf-8"):
        h ^= byte
        h = (h * _FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return h
