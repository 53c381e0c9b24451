"""Chat-completion client: an OpenAI-compatible HTTP backend and a
deterministic scripted mock, behind one ``complete`` call with an optional
content-addressed response cache."""
from __future__ import annotations

import hashlib
import json
import os
import re
from dataclasses import dataclass, field
from pathlib import Path

import httpx

from .annotator import CandidateTypes, infer_types_rules
from .coltypes import ColumnType
from .errors import BadStatus, LlmTimeout, TransportError
from .planning import synthesize_steps
from .standardizers import CleanOptions, DEFAULT_OPTIONS
from .table import load_csv

DEFAULT_MODEL = "gpt-4o-2024-08-06"
DEFAULT_BASE_URL = "https://api.openai.com/v1"
API_KEY_ENV = "OPENAI_API_KEY"


@dataclass(frozen=True)
class ChatMessage:
    role: str  # system | user | assistant
    content: str

    def __post_init__(self):
        if self.role not in ("system", "user", "assistant"):
            raise ValueError(f"bad role: {self.role!r}")
        if self.role in ("system", "user") and not self.content:
            raise ValueError(f"{self.role} message needs content")


@dataclass
class LlmConfig:
    backend: str = "mock"  # "openai" or "mock"
    model: str = DEFAULT_MODEL
    temperature: float = 0.0
    timeout: float = 60.0
    seed: "int | None" = 42
    base_url: "str | None" = None
    cache_dir: "str | Path | None" = None
    mock: "MockBackend | None" = None

    def __post_init__(self):
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if self.timeout <= 0:
            raise ValueError("timeout must be > 0")


def cache_key(messages: "list[ChatMessage]", config: LlmConfig) -> str:
    """Stable digest over everything that shapes a reply: model settings
    and the ordered message list."""
    payload = {
        "model": config.model,
        "temperature": config.temperature,
        "seed": config.seed,
        "messages": [{"role": m.role, "content": m.content} for m in messages],
    }
    blob = json.dumps(payload, sort_keys=True, ensure_ascii=False).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def complete(messages: "list[ChatMessage]", config: LlmConfig) -> str:
    """Return the assistant reply for the conversation, consulting the
    response cache first when one is configured."""
    if not messages:
        raise ValueError("messages must be non-empty")
    if messages[0].role != "system":
        raise ValueError("first message must be the system message")

    cache_path: "Path | None" = None
    if config.cache_dir is not None:
        cache_path = Path(config.cache_dir) / f"{cache_key(messages, config)}.json"
        if cache_path.exists():
            return json.loads(cache_path.read_text(encoding="utf-8"))["reply"]

    if config.backend == "mock":
        backend = config.mock or MockBackend()
        reply = backend.reply(messages)
    elif config.backend == "openai":
        reply = _complete_openai(messages, config)
    else:
        raise ValueError(f"unknown backend: {config.backend!r}")

    if cache_path is not None:
        cache_path.parent.mkdir(parents=True, exist_ok=True)
        record = {
            "request": {
                "model": config.model,
                "temperature": config.temperature,
                "seed": config.seed,
                "messages": [{"role": m.role, "content": m.content} for m in messages],
            },
            "reply": reply,
        }
        cache_path.write_text(json.dumps(record, ensure_ascii=False, indent=1), encoding="utf-8")
    return reply


def _complete_openai(messages: "list[ChatMessage]", config: LlmConfig) -> str:
    url = (config.base_url or DEFAULT_BASE_URL).rstrip("/") + "/chat/completions"
    headers = {}
    api_key = os.environ.get(API_KEY_ENV)
    if api_key:
        headers["Authorization"] = f"Bearer {api_key}"
    body = {
        "model": config.model,
        "temperature": config.temperature,
        "messages": [{"role": m.role, "content": m.content} for m in messages],
    }
    if config.seed is not None:
        body["seed"] = config.seed
    try:
        response = httpx.post(url, json=body, headers=headers, timeout=config.timeout)
    except httpx.TimeoutException as exc:
        raise LlmTimeout(f"no reply within {config.timeout}s") from exc
    except httpx.HTTPError as exc:
        raise TransportError(str(exc)) from exc
    if response.status_code != 200:
        raise BadStatus(response.status_code, response.text)
    try:
        return response.json()["choices"][0]["message"]["content"]
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise TransportError(f"malformed completion payload: {exc}") from exc


# --- deterministic mock ------------------------------------------------------

ANNOTATOR_MARKER = "expert column type annotator"
PLANNER_MARKER = "declarative cleaning plan"
_SAMPLE_MARKER = "shown as follows: "
_BLOCK_LINE = re.compile(r"^\**\s*(.+?)\s*:\s*(.+?)\s*\**\s*$")
_FORMAT_LINE = re.compile(r"^-\s*(.+?):\s*(.+)$")

CLEAN_SENTENCE = "Please using corresponding clean functions and write code to clean the column"


@dataclass
class MockBackend:
    """Scripted stand-in for the chat backend.

    With no script it derives sensible replies from the prompt itself (rule
    voting for annotator prompts, a default plan for planner prompts), so a
    whole workflow runs offline and deterministically. Queued replies and
    per-role defaults let tests inject malformed rounds.
    """

    annotator_replies: list = field(default_factory=list)
    planner_replies: list = field(default_factory=list)
    annotator_default: "str | None" = None
    planner_default: "str | None" = None
    candidates: CandidateTypes = field(default_factory=CandidateTypes)
    options: CleanOptions = DEFAULT_OPTIONS

    def reply(self, messages: "list[ChatMessage]") -> str:
        system = messages[0].content
        if ANNOTATOR_MARKER in system:
            if self.annotator_replies:
                return self.annotator_replies.pop(0)
            if self.annotator_default is not None:
                return self.annotator_default
            return self._annotate(system)
        if PLANNER_MARKER in system:
            if self.planner_replies:
                return self.planner_replies.pop(0)
            if self.planner_default is not None:
                return self.planner_default
            return self._plan(system)
        raise TransportError("mock backend has no script for this system message")

    def _annotate(self, system: str) -> str:
        sample = system.split(_SAMPLE_MARKER, 1)
        if len(sample) != 2:
            raise TransportError("mock could not find the table sample")
        lines = sample[1].rstrip().splitlines()
        if lines and lines[-1] == ".":
            lines.pop()  # the template's trailing period
        table = load_csv("\n".join(lines))
        result = infer_types_rules(table, self.candidates, options=self.options)
        return result.render() + "\n\n" + CLEAN_SENTENCE

    def _plan(self, system: str) -> str:
        labels = self._parse_block(system, "Column type annotations:")
        annotations: dict[str, ColumnType] = {}
        for column, label in labels.items():
            try:
                annotations[column] = ColumnType.from_label(label)
            except ValueError:
                annotations[column] = ColumnType.UNKNOWN
        formats = self._parse_formats(system)
        requirements = self._section(system, "User requirements:")
        steps = synthesize_steps(annotations, formats, requirements)
        return json.dumps(steps, ensure_ascii=False, indent=1)

    @staticmethod
    def _section(system: str, header: str) -> str:
        if header not in system:
            return ""
        body = system.split(header, 1)[1]
        # A section runs until the next block header (a line ending in ":").
        lines = []
        for line in body.splitlines():
            if line.endswith(":") and lines:
                break
            lines.append(line)
        return "\n".join(lines)

    def _parse_block(self, system: str, header: str) -> "dict[str, str]":
        parsed: dict[str, str] = {}
        for line in self._section(system, header).splitlines():
            m = _BLOCK_LINE.match(line.strip())
            if m:
                parsed[m.group(1).strip("* ")] = m.group(2).strip("* ")
        return parsed

    def _parse_formats(self, system: str) -> "dict[str, str]":
        formats: dict[str, str] = {}
        for line in self._section(system, "Required target formats:").splitlines():
            m = _FORMAT_LINE.match(line.strip())
            if m:
                formats[m.group(1).strip()] = m.group(2).strip()
        return formats
