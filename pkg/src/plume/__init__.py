"""Text scaffolding for visualization dashboards.

The document model is a tree of rectangular frames holding charts and text
snippets. Everything else derives from that tree: each snippet's semantic
scope, where role-specific placeholders go, how readable the text is against
per-role guidelines, and the bottom-up order in which text is generated.
"""

from .errors import PlumeError
from .model import (
    Chart,
    DashboardDocument,
    Frame,
    Rect,
    SnippetState,
    Styling,
    Suggestion,
    TextRole,
    TextSnippet,
    add_chart,
    add_frame,
    add_snippet,
    create_document,
    edit_snippet,
    load,
    move_frame,
    remove_snippet,
    save,
    set_locked,
    set_snippet_role,
    set_styling,
    set_user_facts,
    validate_document,
)
from .scope import (
    GenerationPlan,
    Scope,
    downstream_text,
    generation_plan,
    highlight_set,
    scope_of,
)
from .suggestions import (
    accept_all,
    accept_suggestion,
    default_styling,
    dismiss_suggestion,
    pending_suggestions,
    placeholder_text,
)
from .metrics import (
    Conformance,
    MetricsReport,
    RoleGuideline,
    analyze,
    conformance,
    count_syllables,
    fk_grade,
    guideline_for,
    lexical_density,
    split_sentences,
    tokenize_words,
)
from .generation import (
    ContextBlock,
    GenerationConfig,
    GenerationReport,
    LiveGenerator,
    MockGenerator,
    PromptBundle,
    TextGeneratorPort,
    assemble_prompt,
    collect_locked_text,
    generate_all,
    refine,
)

__version__ = "0.1.0"
