"""Scikit-learn style estimators wrapping the from-scratch networks.

``StaticEntanglementRegressor`` maps Pauli-expectation vectors to metric
vectors with an MLP; ``EntanglementDynamicsForecaster`` maps single-qubit
time traces to metric trajectories with an LSTM encoder and MLP decoder.
Both follow the fit/predict/get_params protocol, so they compose with
sklearn model selection and pipelines.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .nn import TrainConfig, predict as nn_predict, train_arrays
from .nn.models import DynamicArch, StaticArch


class StaticEntanglementRegressor(RegressorMixin, BaseEstimator):
    """MLP regressor from local Pauli measurements to entanglement metrics.

    By default the input vector is augmented with its elementwise squares:
    purities of measured subsystems are linear in squared expectations, so
    the augmented net extrapolates far better to states outside the
    training distribution (e.g. symmetric sweep ground states).

    Parameters mirror the training configuration; ``random_state`` fixes
    initialization, the validation split and the shuffle order, making
    ``fit`` fully deterministic.
    """

    def __init__(
        self,
        hidden_layers=(512, 512, 256),
        activation="tanh",
        quadratic_features=True,
        learning_rate=1e-3,
        batch_size=256,
        max_epochs=500,
        validation_fraction=0.05,
        patience=20,
        random_state=0,
    ):
        self.hidden_layers = hidden_layers
        self.activation = activation
        self.quadratic_features = quadratic_features
        self.learning_rate = learning_rate
        self.batch_size = batch_size
        self.max_epochs = max_epochs
        self.validation_fraction = validation_fraction
        self.patience = patience
        self.random_state = random_state

    def _train_config(self) -> TrainConfig:
        return TrainConfig(
            learning_rate=self.learning_rate,
            batch_size=self.batch_size,
            max_epochs=self.max_epochs,
            validation_fraction=self.validation_fraction,
            patience=self.patience,
            seed=self.random_state,
        )

    def fit(self, X, y):
        X, y = check_X_y(X, y, multi_output=True, y_numeric=True)
        y = np.asarray(y, dtype=float)
        self._single_output = y.ndim == 1
        y2 = y[:, None] if self._single_output else y
        arch = StaticArch(
            input_dim=X.shape[1],
            output_dim=y2.shape[1],
            hidden_layers=tuple(self.hidden_layers),
            activation=self.activation,
            quadratic_features=self.quadratic_features,
        )
        self.checkpoint_, self.history_ = train_arrays(X, y2, arch, self._train_config())
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        check_is_fitted(self, "checkpoint_")
        X = check_array(X)
        out = nn_predict(self.checkpoint_, X)
        return out[:, 0] if self._single_output else out


class EntanglementDynamicsForecaster(RegressorMixin, BaseEstimator):
    """LSTM + MLP forecaster of entanglement trajectories from time traces.

    ``X`` may be shaped (n_samples, n_steps, n_features), or flattened to
    (n_samples, n_steps * n_features) with ``n_steps`` set. Targets are the
    flattened (horizon, n_metrics) trajectories.
    """

    def __init__(
        self,
        hidden_dim=128,
        decoder_layers=(128, 256),
        activation="relu",
        n_steps=None,
        learning_rate=1e-3,
        batch_size=256,
        max_epochs=500,
        validation_fraction=0.05,
        patience=20,
        random_state=0,
    ):
        self.hidden_dim = hidden_dim
        self.decoder_layers = decoder_layers
        self.activation = activation
        self.n_steps = n_steps
        self.learning_rate = learning_rate
        self.batch_size = batch_size
        self.max_epochs = max_epochs
        self.validation_fraction = validation_fraction
        self.patience = patience
        self.random_state = random_state

    def _train_config(self) -> TrainConfig:
        return TrainConfig(
            learning_rate=self.learning_rate,
            batch_size=self.batch_size,
            max_epochs=self.max_epochs,
            validation_fraction=self.validation_fraction,
            patience=self.patience,
            seed=self.random_state,
        )

    def _to_sequences(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim == 2:
            if self.n_steps is None:
                raise ValueError("flattened traces need n_steps to be set")
            if X.shape[1] % self.n_steps:
                raise ValueError(
                    f"cannot split {X.shape[1]} columns into {self.n_steps} steps"
                )
            X = X.reshape(X.shape[0], self.n_steps, -1)
        if X.ndim != 3:
            raise ValueError(f"expected 2-D or 3-D traces, got shape {X.shape}")
        return X

    def fit(self, X, y):
        X = self._to_sequences(X)
        y = check_array(y, ensure_2d=False, dtype=float)
        if y.ndim == 1:
            y = y[:, None]
        if y.shape[0] != X.shape[0]:
            raise ValueError("inputs and targets disagree on sample count")
        arch = DynamicArch(
            input_dim=X.shape[2],
            n_steps=X.shape[1],
            output_dim=y.shape[1],
            hidden_dim=self.hidden_dim,
            decoder_layers=tuple(self.decoder_layers),
            activation=self.activation,
        )
        self.checkpoint_, self.history_ = train_arrays(X, y, arch, self._train_config())
        self.n_features_in_ = X.shape[1] * X.shape[2]
        return self

    def predict(self, X):
        check_is_fitted(self, "checkpoint_")
        return nn_predict(self.checkpoint_, self._to_sequences(X))
