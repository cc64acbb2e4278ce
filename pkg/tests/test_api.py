"""
Unit tests for the Flask API
"""

import sys
import os

import pytest

# Add project root and src to path
ROOT = os.path.join(os.path.dirname(__file__), '..')
sys.path.append(ROOT)
sys.path.append(os.path.join(ROOT, 'src'))

from deployment.api import app


@pytest.fixture
def client():
    app.config['TESTING'] = True
    with app.test_client() as client:
        yield client


class TestAPI:
    """Test cases for the REST endpoints"""

    def test_health(self, client):
        response = client.get('/health')
        assert response.status_code == 200
        assert response.get_json()['status'] == 'healthy'

    def test_home_lists_commands(self, client):
        assert 'hilbert' in client.get('/').get_json()['endpoints']['/run/<command>']

    def test_config(self, client):
        data = client.get('/config').get_json()
        assert data['cost_guard']['max_n'] == 4

    def test_run_hilbert(self, client):
        response = client.post('/run/hilbert', json={'n': 2, 'cutoff': [2, 2]})
        assert response.status_code == 200
        data = response.get_json()
        assert data['verdict'] == 'pass'
        assert data['exit_code'] == 0
        assert data['body']['table']['1,1'] == 2

    def test_run_planted_torsion_reports_failure(self, client):
        data = client.post('/run/freeness', json={'n': 2, 'planted_torsion': True}).get_json()
        assert data['verdict'] == 'fail'
        assert data['exit_code'] == 1

    @pytest.mark.parametrize('body', [{'n': 0}, {'n': 'two'}, {'cutoff': [1]}, {'colour': 'red'}, {'n': 9},
                                      {'cutoff': ['a', 1]}, {'cutoff': 'big'}, {'n': True}, {'force': 'yes'},
                                      {'planted_torsion': 1}, {'mode': 3}, {'seed': -1}])
    def test_bad_request(self, client, body):
        response = client.post('/run/hilbert', json=body)
        assert response.status_code == 400
        assert 'error' in response.get_json()

    def test_unknown_command(self, client):
        assert client.post('/run/nothing', json={}).status_code == 404


# Run tests
if __name__ == '__main__':
    pytest.main([__file__, '-v'])
