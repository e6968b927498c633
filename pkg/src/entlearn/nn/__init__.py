from .adam import AdamState, adam_init, adam_step
from .models import (
    DynamicArch,
    ModelCheckpoint,
    StaticArch,
    arch_from_dict,
    init_params,
    load_checkpoint,
    model_backward,
    model_forward,
    save_checkpoint,
)
from .training import TrainConfig, gradient_check, mse_loss, predict, train_arrays

__all__ = [
    "AdamState",
    "adam_init",
    "adam_step",
    "DynamicArch",
    "ModelCheckpoint",
    "StaticArch",
    "arch_from_dict",
    "init_params",
    "load_checkpoint",
    "model_backward",
    "model_forward",
    "save_checkpoint",
    "TrainConfig",
    "gradient_check",
    "mse_loss",
    "predict",
    "train_arrays",
]
