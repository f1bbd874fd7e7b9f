"""Chat-completion endpoint client for zero-shot judging.

Speaks the ubiquitous ``POST {base_url}/chat/completions`` JSON contract:
model name, message list, temperature, max tokens in; the first choice's
message content out. The API key comes from an environment variable so no
secret ever lands in configuration files or logs.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Protocol

import requests

from ..errors import ProtocolError, TransportError

JUDGE_API_KEY_ENV = "GROUNDGATE_JUDGE_API_KEY"


@dataclass(frozen=True)
class JudgeReply:
    raw: str
    model_id: str
    latency_s: float


class JudgeClient(Protocol):
    """Anything that can answer a rendered judge payload."""

    model_id: str

    def complete(self, payload: dict) -> JudgeReply: ...


class ChatEndpoint:
    """HTTP judge client for any chat-completion server."""

    def __init__(self, base_url: str, model: str, timeout_s: float = 60.0,
                 api_key_env: str = JUDGE_API_KEY_ENV):
        self.base_url = base_url.rstrip("/")
        self.model_id = model
        self.timeout_s = timeout_s
        self.api_key_env = api_key_env

    def _headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        key = os.environ.get(self.api_key_env, "")
        if key:
            headers["Authorization"] = f"Bearer {key}"
        return headers

    def complete(self, payload: dict) -> JudgeReply:
        body = {"model": self.model_id, **payload}
        start = time.perf_counter()
        try:
            response = requests.post(f"{self.base_url}/chat/completions", json=body,
                                     headers=self._headers(), timeout=self.timeout_s)
        except requests.RequestException as exc:
            raise TransportError(f"judge endpoint unreachable: {exc}") from exc
        latency = time.perf_counter() - start
        if response.status_code >= 500 or response.status_code == 429:
            raise TransportError(f"judge endpoint returned {response.status_code}")
        if response.status_code != 200:
            raise ProtocolError(
                f"judge endpoint rejected the request: {response.status_code} "
                f"{response.text[:200]}")
        try:
            data = response.json()
            content = data["choices"][0]["message"]["content"]
            model_id = data.get("model", self.model_id)
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise ProtocolError(f"malformed chat-completion response: {exc}") from exc
        if not isinstance(content, str):
            raise ProtocolError("chat-completion content is not a string")
        return JudgeReply(raw=content, model_id=str(model_id), latency_s=latency)
