import pytest

from app import create_app


@pytest.fixture
def client(tmp_path):
    app = create_app({'TESTING': True, 'OUTPUT_ROOT': str(tmp_path)})
    return app.test_client()


RUN = {'method': 'particle', 'cells': [10, 1, 1], 'steps': 4, 'ensemble': 2, 'seed': 5,
       'scenario': 'uniform', 'scenario.density': 3, 'out': 'first'}


def test_run_and_inspect(client, tmp_path):
    body = client.post('/run', json=RUN).get_json()
    assert body['status'] is True
    assert body['out'] == str(tmp_path / 'first')
    assert {'config.txt', 'stats.csv', 'pdf.csv', 'mass.csv', 'snapshot_4.csv'} <= set(body['files'])
    assert body['mass'][0]['mean'] == pytest.approx(30.0)
    assert body['mass'][0]['members'] == 2

    body = client.get('/inspect', query_string={'out': 'first'}).get_json()
    assert body['status'] is True
    assert body['config']['seed'] == 5
    assert body['config']['scenario_params'] == {'density': '3'}


def test_inspect_missing_run(client):
    body = client.get('/inspect', query_string={'out': 'nothing'}).get_json()
    assert body['status'] is False


@pytest.mark.parametrize('payload', [
    dict(RUN, method='spectral'),
    dict(RUN, colour='blue'),
    dict(RUN, out='../escape'),
])
def test_bad_requests(client, payload):
    body = client.post('/run', json=payload).get_json()
    assert body['status'] is False
    assert body['error']
