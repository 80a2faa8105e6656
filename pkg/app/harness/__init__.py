"""Обвязка экспериментов: сценарии, метрики, серии прогонов и файлы результатов."""
