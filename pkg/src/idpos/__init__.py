"""Part-of-speech grammar patterns for source-code identifiers.

A library and CLI that tags the words of split identifier names with a
reduced part-of-speech alphabet by combining three constituent taggers'
annotations with positional and contextual features in a decision-tree /
random-forest ensemble.
"""

from .analysis import GrammarPattern, misannotation_ranking, pattern_of, per_context_report
from .corpus import (
    CorpusError,
    FoldAssignment,
    IdentifierRecord,
    assign_folds,
    extract_identifiers,
    parse_corpus,
    read_corpus,
    save_corpus,
    train_test_split,
    write_corpus,
)
from .features import BEST_FEATURES, FEATURE_NAMES, FeatureEncoder, normalized_position, vectorize
from .learners import (
    Algorithm,
    Criterion,
    ForestModel,
    Hyperparameters,
    ModelError,
    TaggerModel,
    TreeModel,
    grid_search,
    impurity,
    kfold_evaluate,
    train_forest,
    train_model,
    train_tree,
)
from .metrics import (
    ConfusionMatrix,
    EvaluationReport,
    drop_column_importance,
    evaluate_records,
    identifier_accuracy,
    permutation_importance,
    word_metrics,
)
from .splitter import SplitIdentifier, UnsplittableIdentifier, split
from .taggers import ConstituentTags, tag_lexicon, tag_posse_like, tag_swum_like
from .tagset import (
    MISSING,
    Conjugation,
    DatasetConfiguration,
    IdentifierContext,
    PennTag,
    Tag,
    Variant,
    apply_augmentation,
    map_penn_to_reduced,
)

__version__ = "0.1.0"
