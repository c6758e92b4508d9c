"""Syntactic features: phrase counts, dependency-relation and POS
distributions, and dependency/constituency tree depths.

Noun/verb phrases come from constituency trees when a sentence has one;
otherwise a dependency fallback finds maximal subtrees rooted at nominal
(NOUN/PROPN/PRON) or verbal tokens whose head lies outside the category.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..config import RunConfig
from ..corpus import ConstituencyNode, Document, Sentence, UPOS_TAGS, word_tokens
from ..errors import DegenerateInputError

#: Base labels of the Universal Dependencies relation inventory (37).
UD_RELATIONS = (
    "acl", "advcl", "advmod", "amod", "appos", "aux", "case", "cc", "ccomp",
    "clf", "compound", "conj", "cop", "csubj", "dep", "det", "discourse",
    "dislocated", "expl", "fixed", "flat", "goeswith", "iobj", "list", "mark",
    "nmod", "nsubj", "nummod", "obj", "obl", "orphan", "parataxis", "punct",
    "reparandum", "root", "vocative", "xcomp",
)
_UD_SET = frozenset(UD_RELATIONS)

#: Reserved bucket for relation labels outside the UD inventory.
OTHER_RELATION = "other"

_NOMINAL_UPOS = frozenset({"NOUN", "PROPN", "PRON"})
_VERBAL_UPOS = frozenset({"VERB"})

FEATURE_NAMES = (
    "np_per_sentence",
    "vp_per_sentence",
    "np_per_word",
    "vp_per_word",
    "mean_np_len",
    *(f"dep_prop_{rel}" for rel in UD_RELATIONS),
    f"dep_prop_{OTHER_RELATION}",
    "mean_dep_depth",
    "max_dep_depth",
    "mean_const_depth",
    "max_const_depth",
    *(f"pos_prop_{tag}" for tag in UPOS_TAGS),
)

#: Features masked as absent when no constituency trees are supplied.
CONST_DEPENDENT = ("mean_const_depth", "max_const_depth")


@dataclass(frozen=True)
class SynxFeatures:
    np_per_sentence: float
    vp_per_sentence: float
    np_per_word: float
    vp_per_word: float
    mean_np_len: float
    dep_props: dict[str, float]
    mean_dep_depth: float
    max_dep_depth: float
    mean_const_depth: float
    max_const_depth: float
    const_present: bool
    pos_props: dict[str, float]
    phrase_source: str  # "constituency", "dependency", or "mixed"

    def as_dict(self) -> dict[str, float]:
        out = {
            "np_per_sentence": self.np_per_sentence,
            "vp_per_sentence": self.vp_per_sentence,
            "np_per_word": self.np_per_word,
            "vp_per_word": self.vp_per_word,
            "mean_np_len": self.mean_np_len,
        }
        for rel in (*UD_RELATIONS, OTHER_RELATION):
            out[f"dep_prop_{rel}"] = self.dep_props.get(rel, 0.0)
        out["mean_dep_depth"] = self.mean_dep_depth
        out["max_dep_depth"] = self.max_dep_depth
        out["mean_const_depth"] = self.mean_const_depth
        out["max_const_depth"] = self.max_const_depth
        for tag in UPOS_TAGS:
            out[f"pos_prop_{tag}"] = self.pos_props.get(tag, 0.0)
        return out

    def absent_names(self) -> set[str]:
        return set() if self.const_present else set(CONST_DEPENDENT)


def _token_depths(sentence: Sentence) -> list[int]:
    """Arc distance from each token to the sentence root (root token = 0)."""
    heads = [tok.head for tok in sentence.tokens]
    depths = [-1] * len(heads)

    def depth_of(i: int) -> int:
        if depths[i] >= 0:
            return depths[i]
        chain = []
        j = i
        while depths[j] < 0 and heads[j] != 0:
            chain.append(j)
            j = heads[j] - 1
        base = 0 if heads[j] == 0 else depths[j]
        if depths[j] < 0:
            depths[j] = 0
        for k in reversed(chain):
            base += 1
            depths[k] = base
        return depths[i]

    for i in range(len(heads)):
        depth_of(i)
    return depths


def dependency_depths(document: Document) -> tuple[float, float]:
    """Mean over sentences of the per-sentence maximum token depth, and the
    document-wide maximum."""
    per_sentence = [max(_token_depths(sent)) for sent in document.sentences
                    if sent.tokens]
    if not per_sentence:
        return 0.0, 0.0
    return sum(per_sentence) / len(per_sentence), float(max(per_sentence))


def constituency_depths(document: Document) -> tuple[float, float, bool]:
    """Depth aggregation over sentences that carry a constituency tree.

    Returns (mean, max, present); (0, 0, False) when no trees are supplied.
    """
    depths = [sent.const_tree.depth() for sent in document.sentences
              if sent.const_tree is not None]
    if not depths:
        return 0.0, 0.0, False
    return sum(depths) / len(depths), float(max(depths)), True


def _count_labels(node: ConstituencyNode, labels: frozenset[str]) -> list[int]:
    """Leaf counts of every subtree whose label is in the given set."""
    found = []
    if node.label in labels:
        found.append(node.leaf_count())
    for child in node.children:
        found.extend(_count_labels(child, labels))
    return found


def _dependency_phrases(sentence: Sentence, category: frozenset[str]) -> list[int]:
    """Sizes of maximal dependency subtrees rooted in the given category.

    A root qualifies when its own head is the sentence root or a token
    outside the category; subtree size counts all descendants.
    """
    tokens = sentence.tokens
    children: dict[int, list[int]] = {i: [] for i in range(len(tokens))}
    for i, tok in enumerate(tokens):
        if tok.head != 0:
            children[tok.head - 1].append(i)

    def subtree_size(i: int) -> int:
        return 1 + sum(subtree_size(c) for c in children[i])

    sizes = []
    for i, tok in enumerate(tokens):
        if tok.upos not in category:
            continue
        head_in_category = (tok.head != 0
                            and tokens[tok.head - 1].upos in category)
        if not head_in_category:
            sizes.append(subtree_size(i))
    return sizes


def phrase_features(
    document: Document,
    np_labels: frozenset[str] = frozenset({"NP"}),
    vp_labels: frozenset[str] = frozenset({"VP"}),
) -> tuple[float, float, float, float, float, str]:
    """NP/VP rates per sentence and per word plus mean NP length in tokens.

    The final element reports which extraction path produced the counts.
    """
    if not document.sentences:
        raise DegenerateInputError("document has no sentences",
                                   doc_id=document.doc_id)
    np_lengths: list[int] = []
    vp_count = 0
    used_const = used_dep = False
    for sentence in document.sentences:
        if sentence.const_tree is not None:
            np_lengths.extend(_count_labels(sentence.const_tree, np_labels))
            vp_count += len(_count_labels(sentence.const_tree, vp_labels))
            used_const = True
        else:
            np_lengths.extend(_dependency_phrases(sentence, _NOMINAL_UPOS))
            vp_count += len(_dependency_phrases(sentence, _VERBAL_UPOS))
            used_dep = True
    n_sentences = len(document.sentences)
    n_words = len(word_tokens(document))
    np_count = len(np_lengths)
    source = ("mixed" if used_const and used_dep
              else "constituency" if used_const else "dependency")
    return (
        np_count / n_sentences,
        vp_count / n_sentences,
        np_count / n_words if n_words else 0.0,
        vp_count / n_words if n_words else 0.0,
        sum(np_lengths) / np_count if np_count else 0.0,
        source,
    )


def fold_deprel(deprel: str) -> str:
    """Fold relation subtypes to base labels; unknown labels go to `other`."""
    base = deprel.split(":", 1)[0]
    return base if base in _UD_SET else OTHER_RELATION


def dependency_distribution(document: Document) -> dict[str, float]:
    """Proportion of tokens per base dependency relation (all tokens)."""
    counts: dict[str, int] = {}
    total = 0
    for sentence in document.sentences:
        for tok in sentence.tokens:
            counts[fold_deprel(tok.deprel)] = counts.get(fold_deprel(tok.deprel), 0) + 1
            total += 1
    if total == 0:
        raise DegenerateInputError("document has no tokens",
                                   doc_id=document.doc_id)
    return {rel: count / total for rel, count in counts.items()}


def pos_distribution(document: Document) -> dict[str, float]:
    """Proportion of tokens per UPOS tag (all tokens, punctuation included)."""
    counts: dict[str, int] = {}
    total = 0
    for sentence in document.sentences:
        for tok in sentence.tokens:
            counts[tok.upos] = counts.get(tok.upos, 0) + 1
            total += 1
    if total == 0:
        raise DegenerateInputError("document has no tokens",
                                   doc_id=document.doc_id)
    return {tag: count / total for tag, count in counts.items()}


def extract_synx(document: Document, config: RunConfig | None = None) -> SynxFeatures:
    config = config or RunConfig.default()
    nps, vps, npw, vpw, np_len, source = phrase_features(
        document, frozenset(config.np_labels), frozenset(config.vp_labels))
    mean_dep, max_dep = dependency_depths(document)
    mean_const, max_const, const_present = constituency_depths(document)
    return SynxFeatures(
        np_per_sentence=nps,
        vp_per_sentence=vps,
        np_per_word=npw,
        vp_per_word=vpw,
        mean_np_len=np_len,
        dep_props=dependency_distribution(document),
        mean_dep_depth=mean_dep,
        max_dep_depth=max_dep,
        mean_const_depth=mean_const,
        max_const_depth=max_const,
        const_present=const_present,
        pos_props=pos_distribution(document),
        phrase_source=source,
    )
