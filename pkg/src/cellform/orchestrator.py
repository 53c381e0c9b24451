"""Four-agent standardization workflow.

A chat manager routes messages among the column-type annotator, the plan
generator, and the plan executor, numbering the hops 1-6: deliver to
annotator (1), store annotation (2), deliver to plan generator (3), store
plan (4), deliver to executor (5), store result or error (6). Every agent
keeps its own append-only memory; the chat manager's memory holds the
whole conversation. Any step failure lands in the chat manager's memory
and restarts the workflow from the top until it succeeds or the retry
budget runs out.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from importlib import resources

from .annotator import (
    AnnotationResult,
    CandidateTypes,
    DEFAULT_SAMPLE_SIZE,
    build_annotator_prompt,
    infer_types_rules,
    parse_annotation_reply,
)
from .coltypes import ColumnType
from .errors import (
    ExecutionError,
    LlmError,
    MalformedAnnotation,
    MalformedPlan,
    SessionActive,
)
from .llm import ChatMessage, LlmConfig, complete
from .planning import CleaningPlan, execute_plan, parse_plan, synthesize_steps, validate_steps
from .standardizers import CleanOptions, DEFAULT_OPTIONS, FUNCTION_NAMES
from .table import Table

DEFAULT_MAX_RETRIES = 3
OUTPUT_ARTIFACT_NAME = "cleaned_data.csv"
COMPLETION_NOTICE = "data standardization is completed"


class AgentRole(str, Enum):
    CHAT_MANAGER = "chat_manager"
    COLUMN_TYPE_ANNOTATOR = "column_type_annotator"
    PLAN_GENERATOR = "plan_generator"
    PLAN_EXECUTOR = "plan_executor"


class SessionStatus(str, Enum):
    PENDING = "pending"
    ANNOTATING = "annotating"
    PLANNING = "planning"
    EXECUTING = "executing"
    SUCCEEDED = "succeeded"
    FAILED = "failed"


RUNNING_STATUSES = (
    SessionStatus.ANNOTATING,
    SessionStatus.PLANNING,
    SessionStatus.EXECUTING,
)


@dataclass(frozen=True)
class MemoryEntry:
    role: AgentRole
    content: str
    step: int  # workflow hop 1-6; 0 for session-level events


@dataclass
class AgentMemory:
    entries: list = field(default_factory=list)

    def append(self, entry: MemoryEntry) -> None:
        self.entries.append(entry)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass
class SessionState:
    table: Table
    requirements: str = ""
    source_name: str = "uploaded table"
    candidates: CandidateTypes = field(default_factory=CandidateTypes)
    options: CleanOptions = DEFAULT_OPTIONS
    sample_size: int = DEFAULT_SAMPLE_SIZE
    max_retries: int = DEFAULT_MAX_RETRIES
    overrides: dict = field(default_factory=dict)  # column -> (ColumnType, format|None)
    annotations: "AnnotationResult | None" = None
    plan: "CleaningPlan | None" = None
    result: "Table | None" = None
    attempts: int = 0
    status: SessionStatus = SessionStatus.PENDING
    memories: dict = field(default_factory=dict)  # AgentRole -> AgentMemory

    def __post_init__(self):
        for role in AgentRole:
            self.memories.setdefault(role, AgentMemory())
        if self.requirements:
            self.record(AgentRole.CHAT_MANAGER, 0, f"User requirements: {self.requirements}")

    @property
    def chat_memory(self) -> AgentMemory:
        return self.memories[AgentRole.CHAT_MANAGER]

    def record(self, author: AgentRole, step: int, content: str) -> MemoryEntry:
        """Append to the chat manager's memory and, for the other agents,
        to their own; the manager's log stays a superset of every other."""
        entry = MemoryEntry(author, content, step)
        self.chat_memory.append(entry)
        if author is not AgentRole.CHAT_MANAGER:
            self.memories[author].append(entry)
        return entry

    def record_exchange(self, agent: AgentRole, step: int, content: str) -> MemoryEntry:
        """A chat-manager delivery to another agent lands in both logs."""
        entry = MemoryEntry(AgentRole.CHAT_MANAGER, content, step)
        self.chat_memory.append(entry)
        self.memories[agent].append(entry)
        return entry

    def set_override(self, column: str, ctype: ColumnType, target_format: "str | None" = None):
        if column not in self.table.columns:
            raise KeyError(column)
        self.overrides[column] = (ctype, target_format)

    def error_history(self) -> list:
        return [e.content for e in self.chat_memory.entries if e.content.startswith("Error")]


def _chat_manager_context(session: SessionState) -> str:
    template = resources.files("cellform.prompts").joinpath("chat_manager.txt").read_text(
        encoding="utf-8"
    )
    text = template.replace("{path}", session.source_name).replace(
        "{candidate_column_types}", session.candidates.labels()
    )
    if session.requirements:
        text += f"\nUser requirements:\n{session.requirements}\n"
    errors = session.error_history()
    if errors:
        text += "\nErrors from previous attempts:\n"
        text += "\n".join(f"- {e}" for e in errors) + "\n"
    return text


def build_plan_prompt(session: SessionState) -> str:
    if session.annotations is None:
        raise ValueError("annotations must be present before planning")
    template = resources.files("cellform.prompts").joinpath("plan_generator.txt").read_text(
        encoding="utf-8"
    )
    formats = {
        column: fmt for column, (_, fmt) in session.overrides.items() if fmt
    }
    format_lines = "\n".join(f"- {column}: {fmt}" for column, fmt in formats.items()) or "(none)"
    return (
        template.replace("{function_list}", ", ".join(FUNCTION_NAMES.values()))
        .replace("{annotations}", session.annotations.render())
        .replace("{required_formats}", format_lines)
        .replace("{requirements}", session.requirements or "(none)")
    )


def _apply_overrides(session: SessionState, result: AnnotationResult) -> AnnotationResult:
    if not session.overrides:
        return result
    assignments = dict(result.assignments)
    for column, (ctype, _) in session.overrides.items():
        assignments[column] = ctype
    return AnnotationResult(assignments, result.source)


def step_annotate(session: SessionState, config: LlmConfig) -> AnnotationResult:
    """Workflow hops 1 and 2. In rules mode the vote replaces the LLM
    round; either way the reply text lands in both memories before it is
    parsed, so a malformed reply stays visible in the transcript."""
    context = _chat_manager_context(session)
    prompt = build_annotator_prompt(session.table, session.candidates, session.sample_size)
    session.record_exchange(AgentRole.COLUMN_TYPE_ANNOTATOR, 1, context + "\n" + prompt)
    if config.backend == "rules":
        result = infer_types_rules(
            session.table, session.candidates, session.sample_size, options=session.options
        )
        session.record(AgentRole.COLUMN_TYPE_ANNOTATOR, 2, result.render())
        return _apply_overrides(session, result)
    reply = complete(
        [ChatMessage("system", prompt), ChatMessage("user", context)], config
    )
    session.record(AgentRole.COLUMN_TYPE_ANNOTATOR, 2, reply)
    result = parse_annotation_reply(reply, list(session.table.columns), session.candidates)
    return _apply_overrides(session, result)


def step_plan(session: SessionState, config: LlmConfig) -> CleaningPlan:
    """Workflow hops 3 and 4."""
    context = _chat_manager_context(session)
    prompt = build_plan_prompt(session)
    session.record_exchange(AgentRole.PLAN_GENERATOR, 3, context + "\n" + prompt)
    if config.backend == "rules":
        formats = {c: fmt for c, (_, fmt) in session.overrides.items() if fmt}
        raw_steps = synthesize_steps(
            session.annotations.assignments, formats, session.requirements
        )
        plan = validate_steps(raw_steps, session.table, session.annotations)
        session.record(AgentRole.PLAN_GENERATOR, 4, plan.render())
        return plan
    reply = complete(
        [ChatMessage("system", prompt), ChatMessage("user", context)], config
    )
    session.record(AgentRole.PLAN_GENERATOR, 4, reply)
    return parse_plan(reply, session.table, session.annotations)


def step_execute(session: SessionState) -> Table:
    """Workflow hops 5 and 6 (the success half of 6)."""
    plan = session.plan
    assert plan is not None
    skipped = [
        name
        for name, ctype in (session.annotations.assignments if session.annotations else {}).items()
        if ctype is ColumnType.UNKNOWN
    ]
    session.record_exchange(
        AgentRole.PLAN_EXECUTOR,
        5,
        f"Execute the cleaning plan ({len(plan.steps)} step(s)):\n{plan.render()}",
    )
    result = execute_plan(plan, session.table, session.options)
    notice = (
        f"Execution finished; {COMPLETION_NOTICE}. "
        f"Store the cleaned table as \"{OUTPUT_ARTIFACT_NAME}\"."
    )
    if skipped:
        notice += " Columns skipped (unknown type): " + ", ".join(skipped) + "."
    session.record(AgentRole.PLAN_EXECUTOR, 6, notice)
    return result


def run_workflow(session: SessionState, config: LlmConfig) -> SessionState:
    """Drive the whole workflow to a terminal status, retrying from the
    annotation step after any failure; never raises for workflow errors."""
    if session.status is not SessionStatus.PENDING:
        raise SessionActive(f"workflow is {session.status.value}, not pending")
    session.attempts = 0
    while session.attempts <= session.max_retries:
        session.attempts += 1
        try:
            session.status = SessionStatus.ANNOTATING
            session.annotations = step_annotate(session, config)
            session.status = SessionStatus.PLANNING
            session.plan = step_plan(session, config)
            session.status = SessionStatus.EXECUTING
            session.result = step_execute(session)
            session.status = SessionStatus.SUCCEEDED
            return session
        except (MalformedAnnotation, MalformedPlan, ExecutionError, LlmError) as exc:
            session.record(
                AgentRole.CHAT_MANAGER,
                6,
                f"Error ({type(exc).__name__}): {exc}",
            )
    session.status = SessionStatus.FAILED
    return session


def add_requirement(session: SessionState, text: str) -> SessionState:
    """Queue an extra natural-language requirement and reset the session
    for a fresh run, keeping the conversation history."""
    if session.status not in (SessionStatus.SUCCEEDED, SessionStatus.FAILED):
        raise SessionActive("the workflow has not finished")
    if not text or not text.strip():
        raise ValueError("requirement text is empty")
    text = text.strip()
    session.requirements = f"{session.requirements}\n{text}".strip()
    session.record(AgentRole.CHAT_MANAGER, 0, f"New user requirement: {text}")
    session.annotations = None
    session.plan = None
    session.result = None
    session.attempts = 0
    session.status = SessionStatus.PENDING
    return session
