"""Endpoint backend against an in-process mock classify server."""

import pytest
from fastapi import FastAPI
from fastapi.testclient import TestClient
from pydantic import BaseModel

from groundgate.classifiers import (
    EndpointClassifier,
    check_classify_endpoint,
    lexical_overlap_score,
)
from groundgate.corpus import GROUNDED, UNGROUNDED
from groundgate.errors import ProtocolError, TransportError


class ClassifyBody(BaseModel):
    query: str
    context: str
    max_sequence_length: int = 512


def make_mock_server(score_fn=None, model_id: str = "mock-encoder") -> FastAPI:
    app = FastAPI()

    @app.post("/v1/classify")
    def classify(body: ClassifyBody):
        score = (score_fn or lexical_overlap_score)(body.query, body.context)
        return {"score": score, "model_id": model_id}

    return app


@pytest.fixture()
def patched_endpoint(monkeypatch):
    """Route the classifier's requests.post into a TestClient-backed app."""
    client = TestClient(make_mock_server())

    def fake_post(url, json=None, headers=None, timeout=None):
        return client.post("/v1/classify", json=json, headers=headers)

    monkeypatch.setattr("groundgate.classifiers.endpoint.requests.post", fake_post)
    return EndpointClassifier(endpoint_url="http://mock/v1/classify", threshold=0.5)


def test_scores_come_from_server(patched_endpoint):
    labels = patched_endpoint.predict([("red green", "red green walls"),
                                       ("alpha beta", "gamma delta")])
    assert list(labels) == [GROUNDED, UNGROUNDED]


def test_verdict_carries_remote_model_id(patched_endpoint):
    verdict = patched_endpoint.classify(("red", "red walls"))
    assert verdict.backend_id == "endpoint:mock-encoder"
    assert verdict.estimated_flops > 0.0


def test_thresholding_applied_to_remote_score(monkeypatch):
    client = TestClient(make_mock_server(score_fn=lambda q, c: 0.73))

    def fake_post(url, json=None, headers=None, timeout=None):
        return client.post("/v1/classify", json=json, headers=headers)

    monkeypatch.setattr("groundgate.classifiers.endpoint.requests.post", fake_post)
    clf = EndpointClassifier(endpoint_url="http://mock/v1/classify", threshold=0.5)
    verdict = clf.classify(("any question", "any context"))
    assert verdict.label == GROUNDED
    assert verdict.score == 0.73


def test_unreachable_endpoint_is_transport_error(monkeypatch):
    import requests as requests_lib

    def fake_post(url, json=None, headers=None, timeout=None):
        raise requests_lib.ConnectionError("refused")

    monkeypatch.setattr("groundgate.classifiers.endpoint.requests.post", fake_post)
    clf = EndpointClassifier(endpoint_url="http://down/v1/classify")
    with pytest.raises(TransportError):
        clf.classify(("q tokens", "c tokens"))


def test_malformed_response_is_protocol_error(monkeypatch):
    app = FastAPI()

    @app.post("/v1/classify")
    def classify():
        return {"confidence": 0.9}  # wrong field names

    client = TestClient(app)

    def fake_post(url, json=None, headers=None, timeout=None):
        return client.post("/v1/classify", json=json, headers=headers)

    monkeypatch.setattr("groundgate.classifiers.endpoint.requests.post", fake_post)
    clf = EndpointClassifier(endpoint_url="http://weird/v1/classify")
    with pytest.raises(ProtocolError):
        clf.classify(("q tokens", "c tokens"))


def test_out_of_range_score_is_protocol_error(monkeypatch):
    client = TestClient(make_mock_server(score_fn=lambda q, c: 1.7))

    def fake_post(url, json=None, headers=None, timeout=None):
        return client.post("/v1/classify", json=json, headers=headers)

    monkeypatch.setattr("groundgate.classifiers.endpoint.requests.post", fake_post)
    clf = EndpointClassifier(endpoint_url="http://mock/v1/classify")
    with pytest.raises(ProtocolError):
        clf.classify(("q tokens", "c tokens"))


def test_bearer_token_sent_when_env_set(monkeypatch):
    captured = {}
    client = TestClient(make_mock_server())

    def fake_post(url, json=None, headers=None, timeout=None):
        captured.update(headers or {})
        return client.post("/v1/classify", json=json, headers=headers)

    monkeypatch.setattr("groundgate.classifiers.endpoint.requests.post", fake_post)
    monkeypatch.setenv("GROUNDGATE_CLASSIFY_TOKEN", "sekrit")
    EndpointClassifier(endpoint_url="http://mock/v1/classify").classify(("red", "red"))
    assert captured.get("Authorization") == "Bearer sekrit"


def test_wire_contract_suite_passes_against_conforming_server():
    client = TestClient(make_mock_server())

    def post(body):
        response = client.post("/v1/classify", json=body)
        try:
            return response.status_code, response.json()
        except ValueError:
            return response.status_code, None

    report = check_classify_endpoint(post)
    assert report.ok, report.failures
    assert report.checks_run > 10


def test_wire_contract_suite_catches_bad_score():
    client = TestClient(make_mock_server(score_fn=lambda q, c: 2.0))

    def post(body):
        response = client.post("/v1/classify", json=body)
        return response.status_code, response.json()

    report = check_classify_endpoint(post)
    assert not report.ok
    assert any("score" in failure for failure in report.failures)
