from simulation.channel import ChannelConfig, sigma_for, modulate, transmit_and_llr
from simulation.fer_simulator import (
    CSV_COLUMNS, SimConfig, FerPoint, FrameResult, FerSimulator, clopper_pearson, frame_outcome,
    points_frame, run_fer_point, run_sweep,
)
from simulation.reference import PUBLISHED_FER, reference_fer, reference_table

__all__ = [
    'ChannelConfig', 'sigma_for', 'modulate', 'transmit_and_llr',
    'CSV_COLUMNS', 'SimConfig', 'FerPoint', 'FrameResult', 'FerSimulator', 'clopper_pearson',
    'frame_outcome', 'points_frame', 'run_fer_point', 'run_sweep',
    'PUBLISHED_FER', 'reference_fer', 'reference_table',
]
